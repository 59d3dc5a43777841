"""Analytical lower bounds on the l1 norm of coherence.

Everything reduces to one scalar problem: the smallest u in [0, 1] with

    A·u + B·√(1 − u²) >= t,

where t = m/a − 1 and (A, B) weigh the in-plane and diagonal parts of the
POVM direction. Its smaller quadratic root is

    u* = (t·A − B·√(A² + B² − t²)) / (A² + B²).
"""

from typing import Optional, Sequence

import numpy as np
from loguru import logger

from cohcert.bounds.feasible import FeasibleDisk, incoherent_feasible, minimize_on_disk
from cohcert.errors import InfeasibleStatisticsError, PreconditionError
from cohcert.models.results import (
    CoherenceMeasure,
    L1Branch,
    L1BoundResult,
    NormalizedInstance,
    ReBoundResult,
    ReMethod,
)
from cohcert.models.states import BlochVector, PovmElement
from cohcert.models.statistics import PartialPovmKnowledge
from cohcert.quantum.bloch import max_bloch_norm
from cohcert.quantum.generators import diagonal_indices, off_diagonal_pairs

WITNESS_MARGIN = 1e-12
CONSISTENCY_TOL = 1e-9


def _reach(nu: np.ndarray, d: int) -> float:
    """Largest |m/a − 1| any Bloch vector of allowed length can produce."""
    return 2.0 / d * float(np.linalg.norm(nu)) * max_bloch_norm(d)


def normalize_element(a: float, nu: Sequence[float], m: float, d: int = 2) -> NormalizedInstance:
    """Swap (M, m) for (𝕀 − M, 1 − m) when m/a − 1 < 0."""
    nu = np.asarray(nu, dtype=float)
    flipped = m / a - 1.0 < 0.0
    if flipped:
        nu = -a * nu / (1.0 - a)
        a, m = 1.0 - a, 1.0 - m
    excess = m / a - 1.0
    if excess > _reach(nu, d) + CONSISTENCY_TOL:
        raise InfeasibleStatisticsError(
            f"m/a − 1 = {excess:.12g} exceeds the reachable {_reach(nu, d):.12g}; "
            "no quantum state reproduces these statistics",
            {"excess": excess, "reach": _reach(nu, d)},
        )
    return NormalizedInstance(a=a, nu=nu, m=m, flipped=flipped)


def witnessable(a: float, nu: Sequence[float], m: float) -> bool:
    """No incoherent qubit reproduces m iff νz² < (m/a − 1)²."""
    excess = m / a - 1.0
    return excess**2 - float(nu[2]) ** 2 > WITNESS_MARGIN


def smallest_root(in_plane: float, diagonal: float, excess: float) -> float:
    """Smallest u in [0, 1] with in_plane·u + diagonal·√(1 − u²) >= excess."""
    diagonal = abs(diagonal)
    if excess <= diagonal:
        return 0.0
    norm2 = in_plane**2 + diagonal**2
    if norm2 == 0.0 or excess**2 > norm2 * (1.0 + 1e-12) + 1e-18:
        raise InfeasibleStatisticsError(
            f"Inequality unsatisfiable: m/a − 1 = {excess:.12g} exceeds {np.sqrt(norm2):.12g}",
            {"excess": excess, "limit": float(np.sqrt(norm2))},
        )
    root = (excess * in_plane - diagonal * np.sqrt(max(0.0, norm2 - excess**2))) / norm2
    return float(np.clip(root, 0.0, 1.0))


def l1_lower_bound_qubit(a: float, nu: Sequence[float], m: float) -> L1BoundResult:
    """Tight lower bound on C_l1 for a qubit measured with M = a(𝕀 + ν·σ)."""
    instance = normalize_element(a, nu, m)
    a, nu, m = instance.a, instance.nu, instance.m
    if not witnessable(a, nu, m):
        return L1BoundResult(
            witness=False,
            bound=0.0,
            branch=L1Branch.NOT_WITNESSABLE,
            element_flipped=instance.flipped,
        )
    in_plane = float(np.hypot(nu[0], nu[1]))
    bound = smallest_root(in_plane, nu[2], instance.excess)
    branch = L1Branch.CASE1 if nu[2] == 0.0 else L1Branch.CASE2
    certificate = tight_state(a, nu, m)
    logger.debug(f"l1 qubit bound {bound:.12g} ({branch.value}, flipped={instance.flipped})")
    return L1BoundResult(
        witness=bound > 0.0,
        bound=bound,
        branch=branch,
        element_flipped=instance.flipped,
        certificate=certificate,
    )


def tight_state(a: float, nu: Sequence[float], m: float) -> BlochVector:
    """Pure state meeting the constraint whose l1 coherence equals the bound.

    The in-plane part is parallel to (νx, νy) with length s and rz shares the
    sign of νz, so the constraint reads A·s + |νz|·√(1 − s²) = m/a − 1 with
    A = √(νx² + νy²). Of the two pure solutions on that line the one with the
    smaller s is returned; s is then exactly the bound.
    """
    instance = normalize_element(a, nu, m)
    a, nu, m = instance.a, instance.nu, instance.m
    if not witnessable(a, nu, m):
        raise PreconditionError("tight_state needs witnessable statistics (νz² < (m/a − 1)²)")
    nx, ny, nz = (float(c) for c in nu)
    in_plane = float(np.hypot(nx, ny))
    if in_plane == 0.0:
        raise PreconditionError("tight_state needs a non-zero in-plane POVM component")
    s = smallest_root(in_plane, nz, instance.excess)
    rz = np.sqrt(max(0.0, 1.0 - s * s))
    if nz < 0.0:
        rz = -rz
    return BlochVector(dim=2, coords=np.array([s * nx / in_plane, s * ny / in_plane, rz]))


def qudit_weights(nu: Sequence[float], d: int):
    """(μ, diagonal weight) for the qudit inequality.

    μ is the largest in-plane norm over off-diagonal generator pairs; the
    diagonal weight is (2/d)·√(Σ ν²) over the diagonal generators.
    """
    nu = np.asarray(nu, dtype=float)
    mu = max(float(np.hypot(nu[p.theta], nu[p.beta])) for p in off_diagonal_pairs(d))
    diagonal = 2.0 / d * float(np.linalg.norm(nu[diagonal_indices(d)]))
    return mu, diagonal


def l1_lower_bound_qudit(a: float, nu: Sequence[float], m: float, d: int) -> float:
    """Smallest C in [0, d − 1] with

    a(1 + μC + (2/d)√(Σν²_diag)·√(d(d−1)/2 − dC²/(2(d−1)))) >= m.

    Substituting C = (d − 1)·u turns this into the qubit root problem.
    """
    instance = normalize_element(a, nu, m, d=d)
    mu, diagonal = qudit_weights(instance.nu, d)
    radius = max_bloch_norm(d)
    bound = (d - 1) * smallest_root(mu * (d - 1), diagonal * radius, instance.excess)
    logger.debug(f"l1 qudit bound (d={d}): {bound:.12g}")
    return float(bound)


def l1_lower_bound_partial(pk: PartialPovmKnowledge, m: float) -> float:
    """Bound when only a and νz are known; in-plane norm² replaced by g(a) − νz²."""
    if m / pk.scale - 1.0 < 0.0:
        pk, m = pk.complement(), 1.0 - m
    excess = m / pk.scale - 1.0
    if excess**2 - pk.z_component**2 <= WITNESS_MARGIN:
        return 0.0
    in_plane = float(np.sqrt(pk.region_bound))
    return smallest_root(in_plane, pk.z_component, excess)


def _l1_objective(r: np.ndarray) -> float:
    return float(np.hypot(r[0], r[1]))


def _l1_gradient(r: np.ndarray) -> np.ndarray:
    length = float(np.hypot(r[0], r[1]))
    if length < 1e-15:
        return np.zeros(3)
    return np.array([r[0] / length, r[1] / length, 0.0])


def l1_bound_convex(
    element: PovmElement, m: float, restarts: int = 10, seed: Optional[int] = 0
) -> ReBoundResult:
    """Numerical minimum of C_l1 over the qubit feasible disk."""
    disk = FeasibleDisk.from_element(element, m)
    if incoherent_feasible(element.matrix, m):
        return ReBoundResult(
            bound=0.0, method=ReMethod.CONVEX_PRIMAL, measure=CoherenceMeasure.L1_NORM
        )
    solution = minimize_on_disk(disk, _l1_objective, _l1_gradient, restarts=restarts, seed=seed)
    return ReBoundResult(
        bound=max(0.0, solution.value),
        method=ReMethod.CONVEX_PRIMAL,
        iterations=solution.iterations,
        gradient_norm=solution.gradient_norm,
        argmin=BlochVector(dim=2, coords=solution.bloch),
        measure=CoherenceMeasure.L1_NORM,
        diagnostics={"restarts": solution.restarts, "statuses": solution.statuses},
    )
