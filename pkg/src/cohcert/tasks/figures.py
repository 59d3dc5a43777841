"""Figure series task."""
from typing import Any, Dict

from cohcert.core.figures import emit_figures
from cohcert.tasks.base import BaseTask
from cohcert.utils.decorators import stage


class FiguresTask(BaseTask):
    """Write one CSV per requested figure into the output directory."""

    name = "figures"

    @stage("figures")
    def run(self) -> Dict[str, Any]:
        paths = emit_figures(self.config.figure_ids(), self.output_dir)
        return {"figures": {str(fid): path for fid, path in zip(self.config.figure_ids(), paths)}}
