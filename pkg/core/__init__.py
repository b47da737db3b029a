# core/__init__.py
from .errors import RadioMatchError
from .schema import BaseSchema
from .testing import test_wrapper
from .tool import BaseTool, auto_wrap_error
from .workflow import BaseGraph

__all__ = [
    "BaseGraph",
    "BaseSchema",
    "BaseTool",
    "RadioMatchError",
    "auto_wrap_error",
    "test_wrapper",
]
