"""Core functionality for the cohcert package."""

from .config import RunConfig
from .figures import emit_figure_data
from .registry import get_available_tasks, TaskRegistry
from .results import ReportManager
from .runner import run, TaskRunner

__all__ = [
    "RunConfig",
    "emit_figure_data",
    "get_available_tasks",
    "TaskRegistry",
    "ReportManager",
    "run",
    "TaskRunner",
]
