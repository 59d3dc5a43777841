"""Feasible-set geometry for Tr[ρM] = m and a multistart disk minimizer.

For a qubit the feasible Bloch vectors are the intersection of the plane
ν·r = m/a − 1 with the unit ball: a disk, parameterized here by two
in-plane coordinates (s, w).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from loguru import logger
from scipy import linalg as sla
from scipy import optimize

from cohcert.errors import InfeasibleStatisticsError, SolverFailureError
from cohcert.models.states import PovmElement
from cohcert.quantum.linalg import as_matrix, herm_eig
from cohcert.quantum.random import make_rng

FEASIBILITY_TOL = 1e-9
EIGEN_FLOOR = 1e-12


def spectral_range(element) -> Tuple[float, float]:
    """The interval of Tr[ρM] over all states: [λmin(M), λmax(M)]."""
    eigenvalues = herm_eig(as_matrix(element))[0]
    return float(eigenvalues[0]), float(eigenvalues[-1])


def check_reachable(element, m: float, tol: float = FEASIBILITY_TOL) -> None:
    low, high = spectral_range(element)
    if not low - tol <= m <= high + tol:
        raise InfeasibleStatisticsError(
            f"No state gives m = {m:.12g}; reachable range is [{low:.12g}, {high:.12g}]",
            {"m": m, "low": low, "high": high},
        )


def incoherent_feasible(element, m: float, tol: float = 1e-12) -> bool:
    """True iff some diagonal state reproduces m: min Mᵢᵢ <= m <= max Mᵢᵢ."""
    diagonal = np.real(np.diag(as_matrix(element)))
    return bool(diagonal.min() - tol <= m <= diagonal.max() + tol)


def incoherent_solution(element, m: float) -> np.ndarray:
    """A diagonal state with Tr[δM] = m, mixing the two bracketing diagonal entries."""
    diagonal = np.real(np.diag(as_matrix(element)))
    d = len(diagonal)
    low, high = int(np.argmin(diagonal)), int(np.argmax(diagonal))
    weights = np.zeros(d)
    span = diagonal[high] - diagonal[low]
    if span <= 0.0:
        weights[:] = 1.0 / d
    else:
        p = float(np.clip((m - diagonal[low]) / span, 0.0, 1.0))
        weights[high] += p
        weights[low] += 1.0 - p
    return np.diag(weights).astype(np.complex128)


@dataclass
class FeasibleDisk:
    """Plane ν·r = t cut by the unit Bloch ball."""

    center: np.ndarray
    basis: np.ndarray
    radius: float
    excess: float

    @classmethod
    def from_element(cls, element: PovmElement, m: float) -> "FeasibleDisk":
        if element.dim != 2:
            raise ValueError("FeasibleDisk is defined for qubits only")
        nu = np.asarray(element.direction, dtype=float)
        excess = m / element.scale - 1.0
        norm2 = float(nu @ nu)
        if norm2 == 0.0:
            if abs(excess) > FEASIBILITY_TOL:
                raise InfeasibleStatisticsError(
                    f"Trivial element (ν = 0) cannot give m = {m} != a = {element.scale}"
                )
            # every state is feasible; the incoherent checks upstream catch this
            return cls(center=np.zeros(3), basis=np.eye(3)[:, :2], radius=1.0, excess=0.0)
        distance = abs(excess) / np.sqrt(norm2)
        if distance > 1.0 + FEASIBILITY_TOL:
            raise InfeasibleStatisticsError(
                f"Constraint plane misses the Bloch ball (distance {distance:.12g})",
                {"distance": distance},
            )
        center = excess * nu / norm2
        if distance > 1.0:
            center = center / distance
        return cls(
            center=center,
            basis=sla.null_space(nu[None, :]),
            radius=float(np.sqrt(max(0.0, 1.0 - min(distance, 1.0) ** 2))),
            excess=excess,
        )

    def point(self, x) -> np.ndarray:
        return self.center + self.basis @ np.asarray(x, dtype=float)

    def points(self, xs: np.ndarray) -> np.ndarray:
        return self.center[None, :] + xs @ self.basis.T

    def grid(self, resolution: int) -> np.ndarray:
        """In-plane coordinates of a square grid clipped to the disk."""
        axis = np.linspace(-self.radius, self.radius, max(int(resolution), 2))
        s, w = np.meshgrid(axis, axis, indexing="ij")
        inside = s**2 + w**2 <= self.radius**2
        coords = np.column_stack([s[inside], w[inside]])
        if not len(coords):
            coords = np.zeros((1, 2))
        return coords

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return float(x @ x) <= self.radius**2 * (1.0 + 1e-12)


@dataclass
class DiskSolution:
    value: float
    bloch: np.ndarray
    iterations: int = 0
    gradient_norm: float = 0.0
    restarts: int = 1
    statuses: list = field(default_factory=list)


def clip_to_ball(r: np.ndarray) -> np.ndarray:
    length = float(np.linalg.norm(r))
    return r / length if length > 1.0 else r


def minimize_on_disk(
    disk: FeasibleDisk,
    objective: Callable[[np.ndarray], float],
    gradient: Callable[[np.ndarray], np.ndarray],
    restarts: int = 10,
    seed: Optional[int] = 0,
    max_iterations: int = 100000,
    ftol: float = 1e-12,
) -> DiskSolution:
    """Minimize a convex function of the Bloch vector over the feasible disk.

    Runs SLSQP with the disk inequality from the centre and from ``restarts − 1``
    seeded random interior points, keeping the best value.
    """
    if disk.radius <= 0.0:
        r = clip_to_ball(disk.center)
        return DiskSolution(value=float(objective(r)), bloch=r, restarts=0)

    radius2 = disk.radius**2

    def fun(x):
        return float(objective(clip_to_ball(disk.point(x))))

    def jac(x):
        return disk.basis.T @ gradient(clip_to_ball(disk.point(x)))

    constraint = {
        "type": "ineq",
        "fun": lambda x: radius2 - float(x @ x),
        "jac": lambda x: -2.0 * x,
    }
    rng = make_rng(seed)
    starts = [np.zeros(2)]
    for _ in range(max(restarts, 1) - 1):
        angle = rng.uniform(0.0, 2.0 * np.pi)
        length = 0.95 * disk.radius * np.sqrt(rng.uniform())
        starts.append(length * np.array([np.cos(angle), np.sin(angle)]))

    best: Optional[DiskSolution] = None
    statuses = []
    iterations = 0
    for start in starts:
        result = optimize.minimize(
            fun,
            start,
            jac=jac,
            method="SLSQP",
            constraints=[constraint],
            options={"maxiter": max_iterations, "ftol": ftol},
        )
        statuses.append(int(result.status))
        iterations += int(result.nit)
        x = np.asarray(result.x, dtype=float)
        if float(x @ x) > radius2:
            x = x * (disk.radius / np.sqrt(float(x @ x)))
        value = fun(x)
        if best is None or value < best.value:
            best = DiskSolution(
                value=value,
                bloch=clip_to_ball(disk.point(x)),
                gradient_norm=float(np.linalg.norm(jac(x))),
            )
    if all(status == 9 for status in statuses):
        raise SolverFailureError(
            f"SLSQP hit the iteration cap ({max_iterations}) on every restart",
            {"iterations": iterations, "statuses": statuses},
        )
    best.iterations = iterations
    best.restarts = len(starts)
    best.statuses = statuses
    logger.debug(f"Disk minimization: value={best.value:.10g}, statuses={statuses}")
    return best
