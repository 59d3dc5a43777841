"""Observed click statistics and partial POVM knowledge."""

from dataclasses import dataclass, field
from typing import Dict, Optional

from cohcert.errors import InconsistentStatisticsError, ValidationError

PROBABILITY_TOL = 1e-12
REGION_TOL = 1e-9


def check_probability(value: float, name: str) -> float:
    value = float(value)
    if not -PROBABILITY_TOL <= value <= 1.0 + PROBABILITY_TOL:
        raise ValidationError(f"Probability {name}={value} outside [0, 1]", {name: value})
    return min(max(value, 0.0), 1.0)


@dataclass
class MeasurementStatistics:
    """Click probabilities for the unknown state (m) and each ancilla (n)."""

    m: float
    n: Dict[str, float] = field(default_factory=dict)
    shots: Optional[int] = None
    counts: Optional[Dict[str, int]] = None
    seed: Optional[int] = None

    def __post_init__(self):
        self.m = check_probability(self.m, "m")
        self.n = {label: check_probability(p, f"n[{label}]") for label, p in self.n.items()}
        if self.shots is not None and self.shots < 1:
            raise ValidationError(f"shots must be >= 1, got {self.shots}")
        if self.counts is not None:
            if self.shots is None:
                raise ValidationError("counts given without shots")
            self._check_counts()

    def _check_counts(self) -> None:
        # each count is p·shots up to integer rounding
        for label, count in self.counts.items():
            p = self.probability(label)
            if int(count) != count or not 0 <= count <= self.shots:
                raise ValidationError(
                    f"Count for '{label}' must be an integer in [0, {self.shots}], got {count}"
                )
            if abs(count - p * self.shots) > 0.5 + 1e-9 * self.shots:
                raise ValidationError(
                    f"Count {count} for '{label}' disagrees with p = {p:.12g} over "
                    f"{self.shots} shots",
                    {"label": label, "count": count, "probability": p},
                )

    def probability(self, label: str) -> float:
        if label == "rho":
            return self.m
        if label not in self.n:
            raise ValidationError(f"No statistics recorded for ancilla '{label}'")
        return self.n[label]


@dataclass(frozen=True)
class PartialPovmKnowledge:
    """Qubit element known only through a and νz.

    The in-plane components are confined to νx² + νy² <= g(a) − νz² with
    g(a) = min{1, (1−a)²/a²}.
    """

    scale: float
    z_component: float
    dim: int = 2

    def __post_init__(self):
        if not 0.0 < self.scale < 1.0:
            raise ValidationError(f"POVM scale a must lie in (0, 1), got {self.scale}")
        if self.z_component**2 > self.g + REGION_TOL:
            raise InconsistentStatisticsError(
                f"Empty POVM region: νz² = {self.z_component**2:.12g} exceeds "
                f"g(a) = {self.g:.12g}",
                {"g": self.g, "nu_z": self.z_component},
            )

    @property
    def a(self) -> float:
        return self.scale

    @property
    def nu_z(self) -> float:
        return self.z_component

    @property
    def g(self) -> float:
        return region_limit(self.scale)

    @property
    def region_bound(self) -> float:
        """Upper limit on νx² + νy², clamped at 0."""
        return max(0.0, self.g - self.z_component**2)

    def complement(self) -> "PartialPovmKnowledge":
        a = self.scale
        return PartialPovmKnowledge(scale=1.0 - a, z_component=-a * self.z_component / (1.0 - a))


def region_limit(a: float) -> float:
    """g(a) = min{1, (1−a)²/a²}."""
    return min(1.0, (1.0 - a) ** 2 / a**2)
