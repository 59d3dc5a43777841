"""Result records produced by the bounding, oracle and no-go modules."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from cohcert.errors import ValidationError
from cohcert.models.states import BlochVector


class CoherenceMeasure(str, Enum):
    RELATIVE_ENTROPY = "relative-entropy"
    L1_NORM = "l1"

    @classmethod
    def parse(cls, value) -> "CoherenceMeasure":
        if isinstance(value, cls):
            return value
        aliases = {"re": cls.RELATIVE_ENTROPY, "relative-entropy": cls.RELATIVE_ENTROPY,
                   "l1": cls.L1_NORM, "l1-norm": cls.L1_NORM}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValidationError(
                f"Unknown coherence measure '{value}'; expected l1 or relative-entropy",
                {"measure": value},
            ) from None


class L1Branch(str, Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    NOT_WITNESSABLE = "not-witnessable"


class ReMethod(str, Enum):
    CONVEX_PRIMAL = "convex"
    DUAL_GT = "dual"
    REGION_SWEEP = "sweep"


@dataclass(frozen=True)
class NormalizedInstance:
    """(a, ν, m) after choosing the element with m/a − 1 >= 0."""

    a: float
    nu: np.ndarray
    m: float
    flipped: bool = False

    @property
    def excess(self) -> float:
        """m/a − 1."""
        return self.m / self.a - 1.0


@dataclass
class L1BoundResult:
    witness: bool
    bound: float
    branch: L1Branch
    element_flipped: bool = False
    certificate: Optional[BlochVector] = None
    measure: CoherenceMeasure = CoherenceMeasure.L1_NORM
    method: str = "analytical"


@dataclass
class ReBoundResult:
    bound: float
    method: ReMethod
    iterations: int = 0
    gradient_norm: Optional[float] = None
    dual_multiplier: Optional[float] = None
    samples: int = 0
    resolution: Optional[List[int]] = None
    tolerance: Optional[float] = None
    certified: bool = True
    argmin: Optional[BlochVector] = None
    measure: CoherenceMeasure = CoherenceMeasure.RELATIVE_ENTROPY
    diagnostics: Dict[str, Any] = field(default_factory=dict)


@dataclass
class OracleResult:
    minimum: float
    argmin: BlochVector
    samples: int
    slack: float
    measure: CoherenceMeasure = CoherenceMeasure.L1_NORM


@dataclass
class ReconstructionCertificate:
    """Incoherent state plus measurements reproducing the given statistics."""

    incoherent_state: np.ndarray
    measurements: Dict[str, np.ndarray]
    reproduced: Dict[str, float]
    max_deviation: float
    povm_residual: float = 0.0
