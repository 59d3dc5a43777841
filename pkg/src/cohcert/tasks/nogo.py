"""No-go demonstrations: incoherent reconstructions of the observed data."""
from typing import Any, Dict, List, Tuple

import numpy as np

from cohcert.errors import PreconditionError
from cohcert.scenario.nogo import bell_povm, nogo_fully_di, nogo_joint
from cohcert.tasks.base import BaseTask
from cohcert.utils.decorators import stage
from cohcert.utils.helpers import complex_matrix


def table_from_config(raw: Dict[str, Dict[str, float]]) -> Dict[Tuple[str, str], float]:
    """``{"x": {"a": p}}`` to ``{(a, x): p}``."""
    if not isinstance(raw, dict) or not raw:
        raise PreconditionError("p_table must map inputs to {outcome: probability}")
    table = {}
    for x, outcomes in raw.items():
        if not isinstance(outcomes, dict):
            raise PreconditionError(f"p_table['{x}'] must map outcomes to probabilities")
        for a, p in outcomes.items():
            if not isinstance(p, (int, float)) or isinstance(p, bool):
                raise PreconditionError(f"p_table['{x}']['{a}'] must be a number, got {p!r}")
            table[(a, x)] = float(p)
    return table


def joint_from_config(raw) -> List[np.ndarray]:
    """The Bell-basis measurement for ``"bell"``, otherwise a list of matrices."""
    if raw == "bell":
        return bell_povm()
    if not isinstance(raw, list):
        raise PreconditionError("joint must be 'bell' or a list of matrices")
    return [complex_matrix(item, f"joint[{k}]") for k, item in enumerate(raw)]


class NogoTask(BaseTask):
    """Fully-DI table or joint measurement reproduced by an incoherent state."""

    name = "nogo"

    @stage("nogo")
    def certificate(self):
        config = self.config
        if config.option("p_table") is not None:
            return nogo_fully_di(table_from_config(config.option("p_table")), dim=config.dim)
        if config.option("joint") is not None:
            if config.state is None:
                raise PreconditionError("The joint construction needs the unknown 'state'")
            return nogo_joint(
                config.state_matrix(), joint_from_config(config.option("joint")),
                config.ancilla_set(),
            )
        raise PreconditionError("nogo needs either options.p_table or options.joint")

    def run(self) -> Dict[str, Any]:
        return {"nogo": self.certificate()}
