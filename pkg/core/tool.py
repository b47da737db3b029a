# core/tool.py
import functools
import logging

from core.errors import RadioMatchError, ToolExecutionError


def auto_wrap_error(method):
    """
    Wrap a tool method so unexpected exceptions carry their origin.

    Domain errors pass through untouched; anything else is re-raised as
    ToolExecutionError("<Class>.<method>: <message>") chained to the cause.
    """

    @functools.wraps(method)
    def wrapper(self, *args, **kwargs):
        try:
            return method(self, *args, **kwargs)
        except RadioMatchError:
            raise
        except Exception as exc:
            origin = f"{type(self).__name__}.{method.__name__}"
            raise ToolExecutionError(f"{origin}: {exc}") from exc

    return wrapper


class BaseTool:
    """Base class for agent tools. Subclasses keep their computations here."""

    def __init__(self):
        self.logger = logging.getLogger(type(self).__module__)
