"""Tasks that stop after simulation or tomography."""
from typing import Any, Dict

from cohcert.tasks.base import BaseTask


class SimulateTask(BaseTask):
    """Click statistics for ρ and every ancilla."""

    name = "simulate"

    def run(self) -> Dict[str, Any]:
        return {"statistics": self.statistics()}


class TomographyTask(BaseTask):
    """Statistics followed by measurement tomography."""

    name = "tomo"

    def run(self) -> Dict[str, Any]:
        return {"statistics": self.statistics(), "tomography": self.tomography_section()}
