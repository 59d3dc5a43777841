"""Brute-force comparison task."""
from typing import Any, Dict, Optional

from loguru import logger

from cohcert.errors import PreconditionError
from cohcert.models.results import CoherenceMeasure
from cohcert.models.states import PovmElement
from cohcert.oracle import oracle_min_coherence, oracle_witness
from cohcert.oracle.search import DEFAULT_RESOLUTION, DEFAULT_SAMPLES, DEFAULT_SLACK
from cohcert.tasks.base import BaseTask
from cohcert.utils.decorators import stage


class OracleMixin:
    """Oracle section shared by the oracle task and ``--with-oracle`` bound runs."""

    @stage("oracle")
    def oracle_section(self, measure: CoherenceMeasure) -> Dict[str, Any]:
        element = self.knowledge()
        if not isinstance(element, PovmElement):
            raise PreconditionError("The oracle needs a fully reconstructed POVM element")
        config = self.config
        m = self.statistics().m
        logger.info(f"Running oracle for {measure.value}")
        result = oracle_min_coherence(
            measure,
            element,
            m,
            resolution=int(config.option("oracle_resolution", DEFAULT_RESOLUTION)),
            slack=float(config.option("slack", DEFAULT_SLACK)),
            samples=int(config.option("oracle_samples", DEFAULT_SAMPLES)),
            seed=config.seed if config.seed is not None else 0,
        )
        section: Dict[str, Any] = {"min_coherence": result}
        if element.dim == 2:
            section["witness"] = oracle_witness(element.a, element.nu, m)
        else:
            section["witness"] = None
        section["resolution"] = int(config.option("oracle_resolution", DEFAULT_RESOLUTION))
        return section


class OracleTask(OracleMixin, BaseTask):
    """Dense-search minimum coherence for the reconstructed element."""

    name = "oracle"

    def run(self) -> Dict[str, Any]:
        measure = CoherenceMeasure.parse(self.config.option("measure", "l1"))
        return {
            "statistics": self.statistics(),
            "tomography": self.tomography_section(),
            "oracle": self.oracle_section(measure),
        }


def optional_oracle(task: OracleMixin, measure: CoherenceMeasure) -> Optional[Dict[str, Any]]:
    if not task.config.option("with_oracle", False):
        return None
    return task.oracle_section(measure)
