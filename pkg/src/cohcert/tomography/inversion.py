"""Measurement tomography of the untrusted POVM element.

Direct algebraic inversion for the canonical qubit ancillas, least squares
for arbitrary informationally complete sets, and the two-state partial
variant that only pins down a and νz.
"""

from typing import Mapping, Optional, Sequence

import numpy as np
from loguru import logger
from scipy import linalg as sla

from cohcert.errors import (
    DegenerateStatisticsError,
    InconsistentStatisticsError,
    InformationallyIncompleteError,
    NoisyStatisticsError,
    ValidationError,
)
from cohcert.models.states import AncillaSet, PovmElement
from cohcert.models.statistics import PartialPovmKnowledge, check_probability
from cohcert.quantum.bloch import expand
from cohcert.quantum.linalg import PSD_TOL, min_eigenvalue

QUBIT_LABELS = ("0", "1", "+", "+i")
RESIDUAL_TOL = 1e-6


def _scale(n0: float, n1: float) -> float:
    a = (n0 + n1) / 2.0
    if not 0.0 < a < 1.0:
        raise DegenerateStatisticsError(
            f"Scale a = {a:.6g} outside (0, 1); statistics are degenerate", {"a": a}
        )
    return a


def build_element(d: int, a: float, nu: np.ndarray) -> PovmElement:
    """Validate positivity of M and 𝕀 − M before wrapping."""
    identity = np.eye(d, dtype=np.complex128)
    candidate = a * (identity + expand(d, nu))
    worst = min(min_eigenvalue(candidate), min_eigenvalue(identity - candidate))
    if worst < -PSD_TOL:
        raise NoisyStatisticsError(
            f"Reconstructed element is not a valid POVM element (eigenvalue {worst:.6g})",
            eigenvalue=worst,
        )
    return PovmElement(dim=d, scale=a, direction=nu)


def full_tomography_qubit(n: Sequence[float]) -> PovmElement:
    """Invert the click probabilities for {|0⟩, |1⟩, |+⟩, |+i⟩}.

    Accepts either a sequence in that order or a mapping keyed by those labels.
    """
    if isinstance(n, Mapping):
        missing = [label for label in QUBIT_LABELS if label not in n]
        if missing:
            raise ValidationError(f"Missing ancilla statistics for {missing}")
        n = [n[label] for label in QUBIT_LABELS]
    if len(n) != 4:
        raise ValidationError(f"Qubit tomography needs 4 probabilities, got {len(n)}")
    n0, n1, n_plus, n_plus_i = (check_probability(p, f"n{k}") for k, p in enumerate(n))
    a = _scale(n0, n1)
    nu = np.array([n_plus / a - 1.0, n_plus_i / a - 1.0, (n0 - n1) / (2.0 * a)])
    logger.debug(f"Qubit tomography: a={a:.6g}, nu={nu.tolist()}")
    return build_element(2, a, nu)


def design_matrix(ancillas: AncillaSet) -> np.ndarray:
    """Rows [1, (2/d) r_x] so that n_x = a + (2/d) r_x · (aν)."""
    d = ancillas.dim
    rows = [np.concatenate(([1.0], 2.0 / d * state.bloch().coords)) for _, state in ancillas]
    return np.array(rows)


def full_tomography_qudit(
    n: Mapping[str, float], ancillas: AncillaSet, residual_tol: float = RESIDUAL_TOL
) -> PovmElement:
    """Least-squares tomography from any informationally complete ancilla set."""
    d = ancillas.dim
    missing = [label for label in ancillas.labels if label not in n]
    if missing:
        raise ValidationError(f"Missing ancilla statistics for {missing}")
    design = design_matrix(ancillas)
    rank = int(np.linalg.matrix_rank(design, tol=1e-10))
    if rank < d * d:
        deficiency = d * d - rank
        raise InformationallyIncompleteError(
            f"Ancillas span a rank-{rank} subspace; {deficiency} of {d * d} "
            "operator directions are unobserved",
            deficiency=deficiency,
            details={"rank": rank},
        )
    observed = np.array([check_probability(n[label], label) for label in ancillas.labels])
    solution, _, _, _ = sla.lstsq(design, observed)
    residual = float(np.linalg.norm(design @ solution - observed))
    if residual > residual_tol:
        raise InconsistentStatisticsError(
            f"Least-squares residual {residual:.3e} exceeds {residual_tol:.0e}",
            {"residual": residual},
        )
    a = float(solution[0])
    if not 0.0 < a < 1.0:
        raise DegenerateStatisticsError(f"Scale a = {a:.6g} outside (0, 1)", {"a": a})
    logger.debug(f"Qudit tomography (d={d}): a={a:.6g}, residual={residual:.2e}")
    return build_element(d, a, solution[1:] / a)


def tomography_residual(
    element: PovmElement, n: Mapping[str, float], ancillas: AncillaSet
) -> float:
    design = design_matrix(ancillas)
    solution = element.scale * np.concatenate(([1.0], element.direction))
    observed = np.array([n[label] for label in ancillas.labels])
    return float(np.linalg.norm(design @ solution - observed))


def partial_tomography_z(n0: float, n1: Optional[float] = None) -> PartialPovmKnowledge:
    """Recover a and νz from the |0⟩ and |1⟩ click probabilities."""
    if n1 is None and isinstance(n0, Mapping):
        missing = [label for label in ("0", "1") if label not in n0]
        if missing:
            raise ValidationError(f"Missing ancilla statistics for {missing}")
        n0, n1 = n0["0"], n0["1"]
    n0 = check_probability(n0, "n0")
    n1 = check_probability(n1, "n1")
    a = _scale(n0, n1)
    # the region check lives in PartialPovmKnowledge
    return PartialPovmKnowledge(scale=a, z_component=(n0 - n1) / (2.0 * a))
