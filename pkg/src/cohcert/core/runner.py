"""Main orchestration logic for running tasks."""

import time
from typing import Any, Dict, Optional

from loguru import logger

from cohcert.core.config import RunConfig
from cohcert.core.registry import TaskRegistry
from cohcert.core.results import ReportManager


def run(config: RunConfig, output_dir: str = "results", with_timing: bool = False) -> Dict[str, Any]:
    """Run one configured task and return its report.

    Args:
        config: Validated run configuration.
        output_dir: Directory for side files (figure CSVs).
        with_timing: Whether to add wall-clock timing to the report.

    Returns:
        Report mapping: config echo, task name and the task's sections.
    """
    runner = TaskRunner(output_dir=output_dir, with_timing=with_timing)
    return runner.run(config)


class TaskRunner:
    """Handles the orchestration of the certification pipeline."""

    def __init__(self, output_dir: str = "results", with_timing: bool = False):
        """Initialize the task runner.

        Args:
            output_dir: Directory to save reports and side files in.
            with_timing: Whether reports carry timing information.
        """
        self.output_dir = output_dir
        self.with_timing = with_timing
        self.registry = TaskRegistry()
        self.report_manager = ReportManager(output_dir)

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """Run the task named in the config.

        Args:
            config: Validated run configuration.

        Returns:
            Report mapping.
        """
        task_class = self.registry.require(config.task)
        logger.info(f"Running task {config.task}")
        started = time.perf_counter()
        task = task_class(config, output_dir=self.output_dir)
        sections = task.run()
        report: Dict[str, Any] = {"task": config.task, "config": config.to_dict(), **sections}
        if self.with_timing:
            report["timing"] = {"seconds": time.perf_counter() - started}
        logger.info(f"Task {config.task} finished")
        return report

    def run_and_save(self, config: RunConfig, filename: Optional[str] = None) -> str:
        """Run the task and save its report.

        Args:
            config: Validated run configuration.
            filename: Optional report filename.

        Returns:
            Path to the saved report file.
        """
        report = self.run(config)
        return self.report_manager.save(report, filename)
