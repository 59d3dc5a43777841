"""Decorators for the cohcert package."""
from functools import wraps

from loguru import logger

from cohcert.errors import CohcertError


def stage(name: str):
    """Tag errors raised inside the wrapped call with a pipeline stage.

    Args:
        name: Stage label reported in the CLI error object.

    Returns:
        A decorator that logs and re-raises ``CohcertError`` with ``stage`` set.
    """
    def decorator(func):
        @wraps(func)
        def wrapped(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except CohcertError as e:
                if e.stage is None:
                    e.stage = name
                logger.error(f"Stage '{name}' failed in {func.__qualname__}: {e.message}")
                raise
        return wrapped
    return decorator
