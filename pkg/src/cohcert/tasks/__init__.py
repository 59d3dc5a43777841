"""Pipeline tasks, one per CLI subcommand."""

from cohcert.tasks.base import BaseTask
from cohcert.tasks.bounds import BoundL1Task, BoundReTask
from cohcert.tasks.figures import FiguresTask
from cohcert.tasks.nogo import NogoTask
from cohcert.tasks.oracle import OracleTask
from cohcert.tasks.session import SimulateTask, TomographyTask

__all__ = [
    "BaseTask",
    "BoundL1Task",
    "BoundReTask",
    "FiguresTask",
    "NogoTask",
    "OracleTask",
    "SimulateTask",
    "TomographyTask",
]
