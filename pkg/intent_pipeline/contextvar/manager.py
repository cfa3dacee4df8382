import contextvars
import threading
from contextlib import contextmanager
from typing import Any, Dict, Generator


class ContextVarManager:
    """Binds pipeline context (``user``, ``policy``, ``stage``...) to the
    current thread or task so that every log line carries it.

    Attributes:
        PREFIX (str): Namespace of the underlying ``ContextVar`` names.

    """

    PREFIX = "intent_pipeline_"

    def __init__(self) -> None:
        self._context_vars: Dict[str, contextvars.ContextVar[Any]] = {}
        self._lock = threading.Lock()

    def _get_or_create(self, key: str) -> contextvars.ContextVar[Any]:
        full_key = f"{self.PREFIX}{key}"
        var = self._context_vars.get(full_key)
        if var is None:
            with self._lock:
                var = self._context_vars.get(full_key)
                if var is None:
                    var = contextvars.ContextVar(full_key, default=Ellipsis)
                    self._context_vars[full_key] = var
        return var

    def bind(self, **kwargs: Any) -> None:
        for key, value in kwargs.items():
            self._get_or_create(key).set(value)

    def batch_bind(self, **kwargs: Any) -> Dict[str, contextvars.Token]:
        """Bind several keys and return the tokens that undo the binding."""
        return {key: self._get_or_create(key).set(value) for key, value in kwargs.items()}

    def unbind(self, key: str) -> None:
        full_key = f"{self.PREFIX}{key}"
        if full_key in self._context_vars:
            self._context_vars[full_key].set(Ellipsis)

    def reset(self, tokens: Dict[str, contextvars.Token]) -> None:
        for key, token in tokens.items():
            self._get_or_create(key).reset(token)

    def clear(self) -> None:
        for var in self._context_vars.values():
            var.set(Ellipsis)

    def get_contextvars(self) -> Dict[str, Any]:
        """Return the keys bound in the current context, sorted by name."""
        bound = {
            name[len(self.PREFIX) :]: var.get()
            for name, var in list(self._context_vars.items())
            if var.get() is not Ellipsis
        }
        return dict(sorted(bound.items()))

    def get_merged_context(self, bound_context: Dict[str, Any]) -> Dict[str, Any]:
        """Context variables overlaid with ``bound_context`` (which wins)."""
        merged = self.get_contextvars()
        merged.update(bound_context)
        return merged

    @contextmanager
    def scoped_context(self, **kwargs: Any) -> Generator[None, None, None]:
        """Bind ``kwargs`` for the duration of the ``with`` block."""
        tokens = self.batch_bind(**kwargs)
        try:
            yield
        finally:
            self.reset(tokens)


manager: ContextVarManager = ContextVarManager()
