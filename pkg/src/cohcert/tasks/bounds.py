"""Tasks that certify coherence lower bounds."""
from typing import Any, Dict

from loguru import logger

from cohcert.bounds import (
    l1_bound_convex,
    l1_lower_bound_partial,
    l1_lower_bound_qubit,
    l1_lower_bound_qudit,
    re_bound_convex,
    re_bound_dual,
    re_bound_partial,
)
from cohcert.bounds.l1 import WITNESS_MARGIN
from cohcert.errors import PreconditionError
from cohcert.models.results import CoherenceMeasure, ReMethod
from cohcert.models.statistics import PartialPovmKnowledge
from cohcert.tasks.base import BaseTask
from cohcert.tasks.oracle import OracleMixin, optional_oracle
from cohcert.utils.decorators import stage


class BoundL1Task(OracleMixin, BaseTask):
    """Analytical l1 bound, optionally next to the numerical disk minimum."""

    name = "bound-l1"

    @stage("bound")
    def bound_section(self) -> Dict[str, Any]:
        knowledge = self.knowledge()
        m = self.statistics().m
        method = self.config.option("method", "analytical")
        if isinstance(knowledge, PartialPovmKnowledge):
            bound = l1_lower_bound_partial(knowledge, m)
            return {"method": "analytical-partial", "bound": bound, "witness": bound > 0.0,
                    "tolerance": WITNESS_MARGIN}
        if knowledge.dim > 2:
            bound = l1_lower_bound_qudit(knowledge.a, knowledge.nu, m, knowledge.dim)
            return {"method": "analytical-qudit", "bound": bound, "witness": bound > 0.0,
                    "tolerance": WITNESS_MARGIN}
        section: Dict[str, Any] = {
            "analytical": l1_lower_bound_qubit(knowledge.a, knowledge.nu, m),
            "tolerance": WITNESS_MARGIN,
        }
        if method == "convex":
            restarts = int(self.config.option("restarts", 10))
            section["convex"] = l1_bound_convex(knowledge, m, restarts=restarts)
        elif method != "analytical":
            raise PreconditionError(f"Unknown l1 method '{method}' (analytical|convex)")
        return section

    def run(self) -> Dict[str, Any]:
        report = {
            "statistics": self.statistics(),
            "tomography": self.tomography_section(),
            "bound": self.bound_section(),
        }
        oracle = optional_oracle(self, CoherenceMeasure.L1_NORM)
        if oracle is not None:
            report["oracle"] = oracle
        return report


class BoundReTask(OracleMixin, BaseTask):
    """Relative-entropy bound by the convex primal, the dual or the region sweep."""

    name = "bound-re"

    @stage("bound")
    def bound_section(self):
        config = self.config
        knowledge = self.knowledge()
        m = self.statistics().m
        default = ReMethod.REGION_SWEEP.value if self.partial else ReMethod.CONVEX_PRIMAL.value
        try:
            method = ReMethod(config.option("method", default))
        except ValueError:
            raise PreconditionError(
                f"Unknown relative-entropy method '{config.option('method')}' (convex|dual|sweep)"
            ) from None
        seed = config.seed if config.seed is not None else 0
        logger.info(f"Relative-entropy bound via {method.value}")

        if isinstance(knowledge, PartialPovmKnowledge) and method is not ReMethod.REGION_SWEEP:
            raise PreconditionError("Partial tomography supports only the 'sweep' method")
        if method is ReMethod.CONVEX_PRIMAL:
            return re_bound_convex(knowledge, m, restarts=int(config.option("restarts", 10)),
                                   seed=seed)
        if method is ReMethod.DUAL_GT:
            return re_bound_dual(knowledge, m, lambda_range=config.lambda_range(),
                                 tol=float(config.option("tolerance", 1e-9)))
        if not isinstance(knowledge, PartialPovmKnowledge):
            if knowledge.dim != 2:
                raise PreconditionError("The region sweep is defined for qubits only")
            knowledge = PartialPovmKnowledge(scale=knowledge.a, z_component=float(knowledge.nu[2]))
        return re_bound_partial(knowledge, m, resolution=config.resolution(),
                                restarts=int(config.option("restarts", 3)), seed=seed)

    def run(self) -> Dict[str, Any]:
        report = {
            "statistics": self.statistics(),
            "tomography": self.tomography_section(),
            "bound": self.bound_section(),
        }
        oracle = optional_oracle(self, CoherenceMeasure.RELATIVE_ENTROPY)
        if oracle is not None:
            report["oracle"] = oracle
        return report
