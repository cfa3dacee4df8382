from .context_filter import ContextVarFilter
