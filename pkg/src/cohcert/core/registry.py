"""Task registry and management."""

from typing import TYPE_CHECKING, Dict, List, Optional, Type

from cohcert.errors import UnknownTaskError

if TYPE_CHECKING:
    from cohcert.tasks.base import BaseTask


def get_available_tasks() -> Dict[str, Type["BaseTask"]]:
    """Get a mapping of task names to their classes.

    Returns:
        Dictionary mapping task names to task classes.
    """
    registry = TaskRegistry()
    return registry.get_all()


class TaskRegistry:
    """Registry for managing available pipeline tasks."""

    def __init__(self):
        """Initialize the task registry with the default tasks."""
        self._tasks: Dict[str, Type["BaseTask"]] = {}
        self._register_default_tasks()

    def _register_default_tasks(self):
        """Register all default tasks."""
        # tasks depend on core.config, so they are imported on first use
        from cohcert.tasks import (
            BoundL1Task,
            BoundReTask,
            FiguresTask,
            NogoTask,
            OracleTask,
            SimulateTask,
            TomographyTask,
        )

        for task_class in (
            SimulateTask,
            TomographyTask,
            BoundL1Task,
            BoundReTask,
            OracleTask,
            NogoTask,
            FiguresTask,
        ):
            self.register(task_class.name, task_class)

    def register(self, name: str, task_class: Type["BaseTask"]):
        """Register a new task.

        Args:
            name: Subcommand name of the task.
            task_class: Task class that inherits from BaseTask.

        Raises:
            ValueError: If task_class is not a subclass of BaseTask.
        """
        from cohcert.tasks.base import BaseTask

        if not isinstance(task_class, type) or not issubclass(task_class, BaseTask):
            raise ValueError(f"Task class {task_class} must inherit from BaseTask")

        self._tasks[name] = task_class

    def get(self, name: str) -> Optional[Type["BaseTask"]]:
        """Get a task class by name.

        Args:
            name: Name of the task.

        Returns:
            Task class if found, None otherwise.
        """
        return self._tasks.get(name)

    def require(self, name: str) -> Type["BaseTask"]:
        """Get a task class by name, failing loudly.

        Args:
            name: Name of the task.

        Returns:
            Task class.

        Raises:
            UnknownTaskError: If no task is registered under ``name``.
        """
        task_class = self.get(name)
        if task_class is None:
            raise UnknownTaskError(
                f"Unknown task '{name}'; available: {self.list_names()}", {"task": name}
            )
        return task_class

    def get_all(self) -> Dict[str, Type["BaseTask"]]:
        """Get all registered tasks.

        Returns:
            Copy of the name to task class mapping.
        """
        return self._tasks.copy()

    def list_names(self) -> List[str]:
        """Get a list of all registered task names.

        Returns:
            List of task names.
        """
        return list(self._tasks.keys())
