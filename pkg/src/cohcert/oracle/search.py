"""Brute-force verifiers for the certified bounds.

Nothing here is clever on purpose: the qubit minimum comes from a dense grid
over the feasible disk, the qudit minimum from rejection sampling, and the
witness predicate from a scan over incoherent qubit states.
"""

from typing import Optional, Tuple

import numpy as np
from loguru import logger
from scipy import optimize

from cohcert.bounds.feasible import FeasibleDisk, spectral_range
from cohcert.errors import FeasibilityFailureError, InfeasibleStatisticsError
from cohcert.models.results import CoherenceMeasure, OracleResult
from cohcert.models.states import BlochVector, PovmElement
from cohcert.parallel import parallel_map
from cohcert.quantum.bloch import bloch_coordinates
from cohcert.quantum.random import make_rng, random_density_batch

DEFAULT_RESOLUTION = 1001
DEFAULT_SLACK = 1e-3
DEFAULT_SAMPLES = 100000
BATCH_SIZE = 10000
MAX_BATCHES = 1000
WITNESS_STEP = 1e-6
WITNESS_TOL = 1e-9
POLISH_STARTS = 4
RIM_POINTS_PER_AXIS = 4


def _entropy_rows(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, -p * np.log2(p), 0.0)
    return terms.sum(axis=-1)


def qubit_coherence_rows(points: np.ndarray, measure: CoherenceMeasure) -> np.ndarray:
    """Coherence of many qubit Bloch vectors at once."""
    if measure is CoherenceMeasure.L1_NORM:
        return np.hypot(points[:, 0], points[:, 1])
    length = np.minimum(np.linalg.norm(points, axis=1), 1.0)
    rz = np.clip(points[:, 2], -1.0, 1.0)
    diagonal = np.column_stack([(1.0 + rz) / 2.0, (1.0 - rz) / 2.0])
    spectrum = np.column_stack([(1.0 + length) / 2.0, (1.0 - length) / 2.0])
    return np.maximum(_entropy_rows(diagonal) - _entropy_rows(spectrum), 0.0)


def state_coherence_rows(states: np.ndarray, measure: CoherenceMeasure) -> np.ndarray:
    """Coherence of a stack of density matrices."""
    diagonal = np.real(np.einsum("kii->ki", states))
    if measure is CoherenceMeasure.L1_NORM:
        return np.abs(states).sum(axis=(1, 2)) - np.abs(diagonal).sum(axis=1)
    spectrum = np.linalg.eigvalsh(states)
    return np.maximum(_entropy_rows(diagonal) - _entropy_rows(spectrum), 0.0)


def _qubit_search(
    measure: CoherenceMeasure, element: PovmElement, m: float, resolution: int
) -> OracleResult:
    try:
        disk = FeasibleDisk.from_element(element, m)
    except InfeasibleStatisticsError as e:
        raise FeasibilityFailureError(f"No qubit state reproduces m = {m:.12g}: {e.message}") from e
    coords = disk.grid(resolution)
    values = qubit_coherence_rows(disk.points(coords), measure)
    order = np.argsort(values)
    candidates = [(float(values[order[0]]), coords[order[0]])]
    evaluated = len(coords)

    def objective(x):
        length = float(np.linalg.norm(x))
        if length > disk.radius:
            x = x * (disk.radius / length)
        return float(qubit_coherence_rows(disk.point(x)[None, :], measure)[0])

    if disk.radius > 0.0:
        # the minimum may sit on the rim, where the clipped interior polish stalls
        angles = np.linspace(0.0, 2.0 * np.pi, RIM_POINTS_PER_AXIS * int(resolution), endpoint=False)
        rim = disk.radius * np.column_stack([np.cos(angles), np.sin(angles)])
        rim_values = qubit_coherence_rows(disk.points(rim), measure)
        evaluated += len(rim)
        k = int(np.argmin(rim_values))
        step = float(angles[1] - angles[0])
        edge = optimize.minimize_scalar(
            lambda angle: objective(disk.radius * np.array([np.cos(angle), np.sin(angle)])),
            bounds=(float(angles[k]) - step, float(angles[k]) + step),
            method="bounded",
            options={"xatol": 1e-12},
        )
        edge_point = disk.radius * np.array([np.cos(edge.x), np.sin(edge.x)])
        candidates.append((float(edge.fun), edge_point))

        starts = [coords[i] for i in order[:POLISH_STARTS]] + [edge_point]
        for start in starts:
            refined = optimize.minimize(
                objective, start, method="Nelder-Mead",
                options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000},
            )
            candidates.append((float(refined.fun), np.asarray(refined.x)))
            evaluated += int(refined.nfev)

    value, best = min(candidates, key=lambda item: item[0])
    length = float(np.linalg.norm(best))
    if length > disk.radius:
        best = best * (disk.radius / length)
    point = disk.point(best)
    point = point / max(1.0, float(np.linalg.norm(point)))
    return OracleResult(
        minimum=value,
        argmin=BlochVector(dim=2, coords=point),
        samples=evaluated,
        slack=0.0,
        measure=measure,
    )


def _sample_batch(args) -> Tuple[int, float, Optional[np.ndarray]]:
    matrix, m, slack, count, seed, measure = args
    states = random_density_batch(matrix.shape[0], count, make_rng(seed))
    clicks = np.real(np.einsum("kij,ji->k", states, matrix))
    accepted = states[np.abs(clicks - m) <= slack]
    if not len(accepted):
        return 0, np.inf, None
    values = state_coherence_rows(accepted, measure)
    best = int(np.argmin(values))
    return len(accepted), float(values[best]), accepted[best]


def _sampled_search(
    measure: CoherenceMeasure,
    element: PovmElement,
    m: float,
    slack: float,
    samples: int,
    seed: Optional[int],
    workers: Optional[int],
) -> OracleResult:
    low, high = spectral_range(element)
    if not low - slack <= m <= high + slack:
        raise FeasibilityFailureError(
            f"m = {m:.12g} lies outside the reachable range [{low:.12g}, {high:.12g}]"
        )
    matrix = np.asarray(element.matrix)
    children = np.random.SeedSequence(seed).spawn(MAX_BATCHES)
    accepted, drawn = 0, 0
    best_value, best_state = np.inf, None
    rounds = max(1, min(MAX_BATCHES, -(-samples // BATCH_SIZE)))
    cursor = 0
    while accepted < samples and cursor < MAX_BATCHES:
        chunk = children[cursor:cursor + rounds]
        cursor += len(chunk)
        jobs = [(matrix, m, slack, BATCH_SIZE, child, measure) for child in chunk]
        for count, value, state in parallel_map(_sample_batch, jobs, workers=workers):
            accepted += count
            if value < best_value:
                best_value, best_state = value, state
        drawn += BATCH_SIZE * len(chunk)
    logger.debug(f"Rejection sampling: {accepted}/{drawn} accepted within slack {slack:g}")
    if best_state is None:
        raise FeasibilityFailureError(
            f"No sampled state satisfied |Tr[ρM] − m| <= {slack:g} after {drawn} draws",
            {"drawn": drawn, "slack": slack},
        )
    d = element.dim
    return OracleResult(
        minimum=best_value,
        argmin=BlochVector(dim=d, coords=bloch_coordinates(best_state, d)),
        samples=accepted,
        slack=slack,
        measure=measure,
    )


def oracle_min_coherence(
    measure,
    element: PovmElement,
    m: float,
    resolution: int = DEFAULT_RESOLUTION,
    slack: float = DEFAULT_SLACK,
    samples: int = DEFAULT_SAMPLES,
    seed: Optional[int] = 0,
    workers: Optional[int] = None,
) -> OracleResult:
    """Smallest coherence found among states reproducing m.

    The result is an upper bound on the true minimum, so every certified
    lower bound has to sit below it.

    Args:
        measure: ``"l1"`` or ``"relative-entropy"`` (or the enum).
        element: Measured POVM element.
        m: Click probability of the unknown state.
        resolution: Grid points per axis over the qubit feasible disk.
        slack: Constraint tolerance for sampled qudit states.
        samples: Accepted qudit samples to collect.
        seed: Seed for the qudit sampler.
        workers: Worker processes for the sampler.
    """
    measure = CoherenceMeasure.parse(measure)
    if element.dim == 2:
        return _qubit_search(measure, element, m, resolution)
    return _sampled_search(measure, element, m, slack, samples, seed, workers)


def oracle_witness(
    a: float, nu, m: float, step: float = WITNESS_STEP, tol: float = WITNESS_TOL
) -> bool:
    """True iff no incoherent qubit state gives a(1 + νz·sz) = m within ``tol``."""
    nu_z = float(nu[2])
    candidates = [np.arange(-1.0, 1.0 + step / 2, step)]
    if nu_z != 0.0:
        exact = (m - a) / (a * nu_z)
        candidates.append(np.array([exact, np.clip(exact, -1.0, 1.0)]))
    candidates.append(np.array([0.0]))
    sz = np.concatenate(candidates)
    sz = sz[np.abs(sz) <= 1.0]
    reproduced = np.abs(a * (1.0 + nu_z * sz) - m) <= tol
    return not bool(reproduced.any())
