"""Coherence quantifiers in the computational basis."""

import numpy as np

from cohcert.models.results import CoherenceMeasure
from cohcert.models.states import DensityMatrix
from cohcert.quantum.bloch import check_length, coords_of
from cohcert.quantum.generators import off_diagonal_pairs
from cohcert.quantum.linalg import binary_entropy, dephase, von_neumann_entropy


def _state(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def c_re(rho) -> float:
    """Relative entropy of coherence S(Δ(ρ)) − S(ρ), in bits."""
    state = _state(rho)
    gap = von_neumann_entropy(dephase(state.matrix)) - von_neumann_entropy(state.matrix)
    return float(min(max(gap, 0.0), np.log2(state.dim)))


def c_l1(rho) -> float:
    """Sum of the moduli of all off-diagonal entries."""
    state = _state(rho)
    magnitudes = np.abs(state.matrix)
    return float(magnitudes.sum() - np.trace(magnitudes))


def c_l1_bloch(d: int, r) -> float:
    """l1 coherence straight from Bloch coordinates.

    Each entry above the diagonal contributes √(r_Θ² + r_β²)/d, twice.
    """
    coords = coords_of(r)
    check_length(d, coords)
    total = sum(np.hypot(coords[p.theta], coords[p.beta]) for p in off_diagonal_pairs(d))
    return float(2.0 / d * total)


def c_re_bloch(r) -> float:
    """Qubit closed form h((1+rz)/2) − h((1+‖r‖)/2)."""
    coords = coords_of(r)
    check_length(2, coords)
    length = min(float(np.linalg.norm(coords)), 1.0)
    rz = float(np.clip(coords[2], -1.0, 1.0))
    return max(0.0, binary_entropy((1.0 + rz) / 2.0) - binary_entropy((1.0 + length) / 2.0))


def coherence(rho, measure) -> float:
    measure = CoherenceMeasure.parse(measure)
    if measure is CoherenceMeasure.RELATIVE_ENTROPY:
        return c_re(rho)
    return c_l1(rho)
