"""Base task class for all pipeline subcommands."""
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Union

from loguru import logger

from cohcert.core.config import RunConfig
from cohcert.errors import PreconditionError
from cohcert.models.statistics import MeasurementStatistics, PartialPovmKnowledge
from cohcert.models.states import PovmElement
from cohcert.scenario.simulator import run_session
from cohcert.tomography.inversion import (
    QUBIT_LABELS,
    full_tomography_qubit,
    full_tomography_qudit,
    partial_tomography_z,
    tomography_residual,
)
from cohcert.utils.decorators import stage


class BaseTask(ABC):
    """Abstract base class for all pipeline tasks.

    Subclasses implement ``run``; the shared stages below cache their results
    so later stages reuse earlier ones.
    """

    name = "task"

    def __init__(self, config: RunConfig, output_dir: str = "results"):
        """Initialize the task with a run configuration.

        Args:
            config: Validated run configuration.
            output_dir: Directory for any side files the task writes.
        """
        self.config = config
        self.output_dir = output_dir
        self._statistics: Optional[MeasurementStatistics] = None
        self._knowledge: Optional[Union[PovmElement, PartialPovmKnowledge]] = None

    @abstractmethod
    def run(self) -> Dict[str, Any]:
        """Execute the task.

        Returns:
            Report sections produced by this task.
        """
        pass

    @property
    def partial(self) -> bool:
        return bool(self.config.option("partial", False))

    @stage("simulate")
    def statistics(self) -> MeasurementStatistics:
        """Observed statistics from the config, or simulated from state and POVM."""
        if self._statistics is None:
            config = self.config
            if config.statistics is not None:
                self._statistics = config.observed_statistics()
            else:
                if config.state is None or config.povm is None:
                    raise PreconditionError(
                        "Config needs either 'statistics' or both 'state' and 'povm'"
                    )
                logger.info(f"Simulating session (shots={config.shots}, seed={config.seed})")
                self._statistics = run_session(
                    config.state_matrix(),
                    config.povm_element(),
                    config.ancilla_set(),
                    shots=config.shots,
                    seed=config.seed,
                )
        return self._statistics

    @stage("tomography")
    def knowledge(self) -> Union[PovmElement, PartialPovmKnowledge]:
        """POVM element (full tomography) or (a, νz) when ``partial`` is set."""
        if self._knowledge is None:
            n = self.statistics().n
            ancillas = self.config.ancilla_set()
            if self.partial:
                self._knowledge = partial_tomography_z(n)
            elif ancillas.dim == 2 and set(ancillas.labels) == set(QUBIT_LABELS):
                self._knowledge = full_tomography_qubit(n)
            else:
                self._knowledge = full_tomography_qudit(n, ancillas)
            logger.info(f"Tomography done ({'partial' if self.partial else 'full'})")
        return self._knowledge

    def tomography_section(self) -> Dict[str, Any]:
        """Report section describing what tomography recovered.

        Returns:
            Reconstructed parameters plus the fit residual (full) or the
            in-plane region (partial).
        """
        knowledge = self.knowledge()
        if isinstance(knowledge, PartialPovmKnowledge):
            return {
                "kind": "partial",
                "a": knowledge.scale,
                "nu_z": knowledge.z_component,
                "g": knowledge.g,
                "region_bound": knowledge.region_bound,
            }
        residual = tomography_residual(knowledge, self.statistics().n, self.config.ancilla_set())
        return {
            "kind": "full",
            "a": knowledge.scale,
            "nu": knowledge.direction,
            "residual": residual,
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}(task={self.config.task!r})"
