"""Lower bounds on the relative entropy of coherence.

Three routes:

* ``re_bound_convex`` minimizes C_RE directly over states meeting Tr[ρM] = m.
* ``re_bound_dual`` evaluates the Golden-Thompson relaxed Lagrange dual,
  which is a sound lower bound at every multiplier.
* ``re_bound_partial`` sweeps the POVM elements compatible with partial
  tomography and keeps the smallest convex bound (an estimate, not a
  certificate).
"""

from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy import linalg as sla
from scipy import optimize
from scipy.special import logsumexp

from cohcert.bounds.feasible import (
    EIGEN_FLOOR,
    FeasibleDisk,
    check_reachable,
    incoherent_feasible,
    incoherent_solution,
    minimize_on_disk,
)
from cohcert.coherence.measures import c_re_bloch
from cohcert.errors import (
    CohcertError,
    InfeasibleStatisticsError,
    SolverFailureError,
)
from cohcert.models.results import ReBoundResult, ReMethod
from cohcert.models.states import BlochVector, PovmElement
from cohcert.models.statistics import PartialPovmKnowledge
from cohcert.parallel import parallel_map
from cohcert.quantum.bloch import bloch_coordinates, bloch_to_operator
from cohcert.quantum.generators import generator_stack
from cohcert.quantum.linalg import as_matrix, dephase, herm_eig, herm_exp, herm_log

LN2 = np.log(2.0)
DEFAULT_LAMBDA_RANGE = (-100.0, 100.0)
DUAL_GRID_POINTS = 1001
MAX_RANGE_DOUBLINGS = 4
BARRIER_WEIGHTS = tuple(10.0**-k for k in range(2, 9))
BARRIER_FLOOR = 1e-9


def _log2_floor(values: np.ndarray) -> np.ndarray:
    return np.log2(np.maximum(values, EIGEN_FLOOR))


def c_re_bloch_gradient(r: np.ndarray) -> np.ndarray:
    """Gradient of the qubit closed form with eigenvalues clamped at 1e-12."""
    r = np.asarray(r, dtype=float)
    length = min(float(np.linalg.norm(r)), 1.0)
    rz = float(np.clip(r[2], -1.0, 1.0))
    # h'(p) = log2((1 − p)/p)
    diagonal = 0.5 * (_log2_floor((1.0 - rz) / 2.0) - _log2_floor((1.0 + rz) / 2.0))
    gradient = np.array([0.0, 0.0, diagonal])
    if length > 1e-15:
        radial = 0.5 * (_log2_floor((1.0 - length) / 2.0) - _log2_floor((1.0 + length) / 2.0))
        gradient -= radial * r / length
    return gradient


def _zero_bound(element: PovmElement, m: float, method: ReMethod) -> ReBoundResult:
    state = incoherent_solution(element.matrix, m)
    return ReBoundResult(
        bound=0.0,
        method=method,
        argmin=BlochVector(dim=element.dim, coords=bloch_coordinates(state, element.dim)),
        diagnostics={"incoherent_feasible": True},
    )


def re_bound_convex(
    element: PovmElement,
    m: float,
    restarts: int = 10,
    seed: Optional[int] = 0,
    max_iterations: int = 100000,
) -> ReBoundResult:
    """Global minimum of C_RE over states with Tr[ρM] = m.

    Qubits are solved on the feasible disk in Bloch space. For d >= 3 the
    linear constraint is eliminated through its null space and positivity is
    kept by a log-barrier on the eigenvalues with shrinking weight.
    """
    check_reachable(element, m)
    if incoherent_feasible(element.matrix, m):
        logger.debug("Incoherent state reproduces m; C_RE bound is 0")
        return _zero_bound(element, m, ReMethod.CONVEX_PRIMAL)

    if element.dim == 2:
        disk = FeasibleDisk.from_element(element, m)
        solution = minimize_on_disk(
            disk,
            c_re_bloch,
            c_re_bloch_gradient,
            restarts=restarts,
            seed=seed,
            max_iterations=max_iterations,
        )
        return ReBoundResult(
            bound=max(0.0, solution.value),
            method=ReMethod.CONVEX_PRIMAL,
            iterations=solution.iterations,
            gradient_norm=solution.gradient_norm,
            argmin=BlochVector(dim=2, coords=solution.bloch),
            diagnostics={"restarts": solution.restarts, "statuses": solution.statuses},
        )
    return _barrier_minimize(element, m, max_iterations)


def _extended_log(mu: np.ndarray, floor: float) -> Tuple[np.ndarray, np.ndarray]:
    """log μ above ``floor``, its second-order Taylor extension below."""
    safe = np.maximum(mu, floor)
    below = mu < floor
    shift = mu - floor
    value = np.where(below, np.log(floor) + shift / floor - shift**2 / (2 * floor**2), np.log(safe))
    slope = np.where(below, 1.0 / floor - shift / floor**2, 1.0 / safe)
    return value, slope


def _entropy_bits(values: np.ndarray) -> float:
    p = np.maximum(values, EIGEN_FLOOR)
    return float(-np.sum(p * np.log2(p)))


def gibbs_start(element: PovmElement, m: float) -> np.ndarray:
    """Full-rank state V·diag(p)·V† with p ∝ exp(−βμ) and Tr[ρM] = m."""
    mu, vectors = herm_eig(element.matrix)
    span = mu[-1] - mu[0]
    target = float(np.clip(m, mu[0] + 1e-9 * span, mu[-1] - 1e-9 * span))

    def weights(beta):
        logits = -beta * mu
        return np.exp(logits - logsumexp(logits))

    def mismatch(beta):
        return float(weights(beta) @ mu) - target

    limit = 1.0
    while mismatch(-limit) < 0.0 or mismatch(limit) > 0.0:
        limit *= 2.0
        if limit > 1e6:
            break
    beta = optimize.brentq(mismatch, -limit, limit) if mismatch(-limit) * mismatch(limit) < 0 else 0.0
    return (vectors * weights(beta)) @ vectors.conj().T


def _barrier_minimize(element: PovmElement, m: float, max_iterations: int) -> ReBoundResult:
    d = element.dim
    nu = np.asarray(element.direction, dtype=float)
    generators = generator_stack(d)
    # Tr[ρM] = a(1 + (2/d)ν·r)
    offset = (d / 2.0) * (m / element.scale - 1.0)
    base = offset * nu / float(nu @ nu)
    basis = sla.null_space(nu[None, :])

    def state_of(y):
        return bloch_to_operator(d, base + basis @ y)

    def make_objective(weight):
        def fun(y):
            rho = state_of(y)
            mu, vectors = np.linalg.eigh(rho)
            diagonal = np.real(np.diag(rho))
            value = _entropy_bits(diagonal) - _entropy_bits(mu)
            barrier, slope = _extended_log(mu, BARRIER_FLOOR)
            value -= weight * float(barrier.sum())
            log_rho = (vectors * (_log2_floor(mu) - weight * slope)) @ vectors.conj().T
            direction = log_rho - np.diag(_log2_floor(diagonal))
            grad_r = np.einsum("kij,ji->k", generators, direction).real / d
            return value, basis.T @ grad_r

        return fun

    y = basis.T @ (bloch_coordinates(gibbs_start(element, m), d) - base)
    iterations = 0
    result = None
    for weight in BARRIER_WEIGHTS:
        result = optimize.minimize(
            make_objective(weight),
            y,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": max_iterations, "ftol": 1e-15, "gtol": 1e-10},
        )
        iterations += int(result.nit)
        y = np.asarray(result.x, dtype=float)
        logger.debug(f"Barrier weight {weight:.0e}: f={result.fun:.10g}, status={result.status}")
    if result.status == 1:
        raise SolverFailureError(
            f"L-BFGS-B reached the iteration cap ({max_iterations})",
            {"iterations": iterations, "message": str(result.message)},
        )

    rho = state_of(y)
    mu, vectors = np.linalg.eigh(rho)
    mu = np.clip(mu, 0.0, None)
    rho = (vectors * (mu / mu.sum())) @ vectors.conj().T
    value = _entropy_bits(np.real(np.diag(rho))) - _entropy_bits(mu / mu.sum())
    return ReBoundResult(
        bound=max(0.0, value),
        method=ReMethod.CONVEX_PRIMAL,
        iterations=iterations,
        gradient_norm=float(np.linalg.norm(result.jac)),
        argmin=BlochVector(dim=d, coords=bloch_coordinates(rho, d)),
        diagnostics={
            "barrier_weights": list(BARRIER_WEIGHTS),
            "min_eigenvalue": float(mu.min()),
            "constraint_residual": float(abs(np.trace(rho @ element.matrix).real - m)),
        },
    )


def _dual_values(element: PovmElement, m: float, lambdas: np.ndarray) -> np.ndarray:
    """(1/ln2)(−max_i [exp(−𝕀 − λM)]_ii − λm) for each λ, in bits."""
    mu, vectors = herm_eig(element.matrix)
    with np.errstate(divide="ignore"):
        log_weights = np.log(np.abs(vectors) ** 2)
    lambdas = np.atleast_1d(np.asarray(lambdas, dtype=float))
    # [exp(−λM)]_ii = Σ_k |V_ik|² exp(−λμ_k)
    exponents = log_weights[None, :, :] - lambdas[:, None, None] * mu[None, None, :]
    log_diagonal = logsumexp(exponents, axis=2) - 1.0
    with np.errstate(over="ignore"):
        peak = np.exp(log_diagonal.max(axis=1))
    return (-peak - lambdas * m) / LN2


def dual_objective(element: PovmElement, m: float, lam: float) -> float:
    """Relaxed dual value at one multiplier; a valid lower bound for every λ."""
    return float(_dual_values(element, m, np.array([lam]))[0])


def dual_state(element: PovmElement, lam: float, sigma) -> np.ndarray:
    """Stationary point exp[−𝕀 − λM + ln Δ(σ)] of the Lagrangian (unnormalized)."""
    d = element.dim
    generator = -np.eye(d) - lam * element.matrix + herm_log(dephase(as_matrix(sigma)))
    return herm_exp(generator)


def re_bound_dual(
    element: PovmElement,
    m: float,
    lambda_range: Sequence[float] = DEFAULT_LAMBDA_RANGE,
    tol: float = 1e-9,
    grid_points: int = DUAL_GRID_POINTS,
) -> ReBoundResult:
    """Maximize the relaxed dual over λ: coarse grid, then golden-section refinement."""
    low, high = (float(v) for v in lambda_range)
    if not low < high:
        raise ValueError(f"lambda_range must be increasing, got {lambda_range}")
    samples = 0
    doublings = 0
    while True:
        grid = np.linspace(low, high, grid_points)
        values = _dual_values(element, m, grid)
        samples += grid_points
        best = int(np.argmax(values))
        at_edge = best in (0, grid_points - 1)
        if not at_edge or doublings >= MAX_RANGE_DOUBLINGS:
            break
        low, high = 2.0 * low, 2.0 * high
        doublings += 1
        logger.debug(f"Dual argmax on the edge; widening λ range to [{low:g}, {high:g}]")
    if at_edge:
        logger.warning(f"Dual argmax still on the λ-range edge after {doublings} doublings")

    lam, value = float(grid[best]), float(values[best])
    if not at_edge:
        try:
            refined = optimize.minimize_scalar(
                lambda x: -dual_objective(element, m, x),
                bracket=(grid[best - 1], grid[best], grid[best + 1]),
                method="golden",
                options={"xtol": tol},
            )
            samples += int(refined.nfev)
            if -refined.fun > value:
                lam, value = float(refined.x), float(-refined.fun)
        except ValueError as e:
            # flat neighbourhood; the grid point is already a sound bound
            logger.debug(f"Golden refinement skipped: {e}")

    return ReBoundResult(
        bound=max(0.0, value),
        method=ReMethod.DUAL_GT,
        dual_multiplier=lam,
        samples=samples,
        tolerance=tol,
        diagnostics={"lambda_range": [low, high], "doublings": doublings, "raw_value": value},
    )


def sweep_grid(radius: float, resolution: Tuple[int, int]) -> np.ndarray:
    """Polar grid over the disk of in-plane components.

    Radii R·k/n_r and angles 2π·j/n_a, so doubling both counts keeps every
    earlier sample.
    """
    n_radii, n_angles = (int(v) for v in resolution)
    points = [(0.0, 0.0)]
    if radius <= 0.0:
        return np.array(points)
    for k in range(1, n_radii + 1):
        rho = radius * (k / n_radii)
        for j in range(n_angles):
            angle = 2.0 * np.pi * (j / n_angles)
            points.append((rho * np.cos(angle), rho * np.sin(angle)))
    return np.array(points)


def _sweep_sample(args) -> Tuple[Optional[float], Optional[list]]:
    scale, nu, m, restarts, seed = args
    try:
        element = PovmElement(dim=2, scale=scale, direction=nu)
        result = re_bound_convex(element, m, restarts=restarts, seed=seed)
    except SolverFailureError:
        raise
    except CohcertError:
        return None, None
    return result.bound, result.argmin.tolist() if result.argmin is not None else None


def re_bound_partial(
    pk: PartialPovmKnowledge,
    m: float,
    resolution: Tuple[int, int] = (64, 128),
    restarts: int = 3,
    seed: Optional[int] = 0,
    workers: Optional[int] = None,
) -> ReBoundResult:
    """Smallest Method-1 bound over every element consistent with (a, νz).

    The minimum over a finite grid over-estimates the worst case and shrinks
    monotonically as the grid is refined, hence ``certified=False``.
    """
    grid = sweep_grid(np.sqrt(pk.region_bound), resolution)
    tasks = [
        (pk.scale, np.array([x, y, pk.z_component]), m, restarts, seed) for x, y in grid
    ]
    outcomes = parallel_map(_sweep_sample, tasks, workers=workers)
    feasible = [(bound, argmin, task[1]) for (bound, argmin), task in zip(outcomes, tasks)
                if bound is not None]
    if not feasible:
        raise InfeasibleStatisticsError(
            f"No POVM element in the region reproduces m = {m:.12g}", {"samples": len(tasks)}
        )
    bound, argmin, nu = min(feasible, key=lambda item: item[0])
    logger.debug(f"Region sweep: {len(feasible)}/{len(tasks)} feasible samples, min {bound:.10g}")
    return ReBoundResult(
        bound=bound,
        method=ReMethod.REGION_SWEEP,
        samples=len(feasible),
        resolution=[int(resolution[0]), int(resolution[1])],
        certified=False,
        argmin=BlochVector(dim=2, coords=argmin) if argmin is not None else None,
        diagnostics={"worst_nu": [float(v) for v in nu], "grid_points": len(tasks)},
    )
