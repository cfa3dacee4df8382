from .manager import ContextVarManager, manager
