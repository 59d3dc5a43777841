import numpy as np
import pytest

from cohcert.bounds.feasible import incoherent_feasible
from cohcert.bounds.relative_entropy import (
    dual_objective,
    dual_state,
    re_bound_convex,
    re_bound_dual,
    re_bound_partial,
    sweep_grid,
)
from cohcert.coherence.measures import c_re, c_re_bloch
from cohcert.errors import InconsistentStatisticsError, InfeasibleStatisticsError
from cohcert.models.results import ReMethod
from cohcert.models.states import DensityMatrix, PovmElement
from cohcert.models.statistics import PartialPovmKnowledge
from cohcert.quantum.random import (
    make_rng,
    random_density_matrix,
    random_pure_state,
    random_qubit_element,
)
from cohcert.scenario.simulator import exact_probability

from conftest import x_state_click


def qutrit_single_coherence_element():
    nu = np.zeros(8)
    nu[0] = 1.0
    return PovmElement(dim=3, scale=0.25, direction=nu)


def test_method_one_threshold(reference_element):
    for q in (0.0, 0.3, 0.5):
        assert re_bound_convex(reference_element, x_state_click(q)).bound == 0.0
    for q in (0.6, 0.8, 1.0):
        assert re_bound_convex(reference_element, x_state_click(q)).bound > 0.0


def test_y_states_are_never_witnessed(reference_element):
    for q in np.linspace(0.0, 1.0, 6):
        m = 0.6 * (1 + 0.25 * q)
        assert re_bound_convex(reference_element, m).bound == 0.0
        assert re_bound_dual(reference_element, m).bound == 0.0


def test_unique_feasible_point_is_maximally_coherent():
    element = PovmElement(dim=2, scale=0.5, direction=[1.0, 0.0, 0.0])
    assert re_bound_convex(element, 1.0).bound == pytest.approx(1.0, abs=1e-9)


def test_method_two_threshold(reference_element):
    assert re_bound_dual(reference_element, x_state_click(0.65)).bound == 0.0
    assert re_bound_dual(reference_element, x_state_click(0.75)).bound > 0.0


def test_ordering_chain(reference_element):
    for q in np.linspace(0.0, 1.0, 11):
        m = x_state_click(q)
        actual = c_re_bloch([q, 0.0, 0.0])
        primal = re_bound_convex(reference_element, m).bound
        dual = re_bound_dual(reference_element, m)
        assert dual.method is ReMethod.DUAL_GT
        assert 0.0 <= dual.bound <= primal + 1e-6
        assert primal <= actual + 1e-6


def test_dual_value_at_any_multiplier_is_below_primal(reference_element):
    rng = make_rng(3)
    m = x_state_click(0.9)
    primal = re_bound_convex(reference_element, m).bound
    for lam in rng.uniform(-100.0, 100.0, size=100):
        assert dual_objective(reference_element, m, lam) <= primal + 1e-6


def test_dual_at_zero_multiplier(reference_element):
    assert dual_objective(reference_element, 0.9, 0.0) == pytest.approx(-np.exp(-1.0) / np.log(2.0))


def test_dual_state_is_positive(reference_element):
    sigma = np.eye(2) / 2
    rho = dual_state(reference_element, -1.0, sigma)
    assert np.all(np.linalg.eigvalsh(rho) > 0.0)


def test_convexity_along_feasible_segment(reference_element):
    # two feasible Bloch points on the plane ν·r = 0.45
    p = np.array([0.9, 0.0, 0.0])
    q = np.array([0.5, 0.0, 0.8])
    assert reference_element.nu @ q == pytest.approx(0.45)
    midpoint = c_re_bloch((p + q) / 2)
    assert midpoint <= (c_re_bloch(p) + c_re_bloch(q)) / 2 + 1e-9


def test_infeasible_constraint(reference_element):
    with pytest.raises(InfeasibleStatisticsError):
        re_bound_convex(reference_element, 0.99)


def test_qutrit_convex_bound():
    element = qutrit_single_coherence_element()
    # ρ = 0.6|+⟩⟨+| + 0.4|2⟩⟨2| gives m = 0.4
    plus = np.zeros(3)
    plus[:2] = 1.0 / np.sqrt(2.0)
    rho = 0.6 * np.outer(plus, plus) + 0.4 * np.diag([0.0, 0.0, 1.0])
    m = float(np.trace(rho @ element.matrix).real)
    assert m == pytest.approx(0.4)
    result = re_bound_convex(element, m)
    assert 0.0 < result.bound <= c_re(rho) + 1e-6
    assert result.diagnostics["constraint_residual"] < 1e-6
    assert re_bound_dual(element, m).bound <= result.bound + 1e-6


def test_incoherent_feasibility_follows_the_diagonal(reference_element):
    # diagonal of the reference element is (0.75, 0.45)
    assert incoherent_feasible(reference_element.matrix, 0.6)
    assert incoherent_feasible(reference_element.matrix, 0.75)
    assert not incoherent_feasible(reference_element.matrix, 0.9)
    qutrit = qutrit_single_coherence_element()
    assert incoherent_feasible(qutrit.matrix, 0.25)
    assert not incoherent_feasible(qutrit.matrix, 0.4)


def test_qutrit_incoherent_instance_is_zero():
    element = qutrit_single_coherence_element()
    assert re_bound_convex(element, 0.25).bound == 0.0


def test_sweep_grid_nests_under_doubling():
    coarse = {tuple(p) for p in sweep_grid(0.7, (4, 8))}
    fine = {tuple(p) for p in sweep_grid(0.7, (8, 16))}
    assert coarse <= fine


@pytest.mark.slow
def test_partial_sweep_is_monotone_and_weaker(reference_element):
    pk = PartialPovmKnowledge(scale=0.6, z_component=0.25)
    m = 0.9
    bounds = [re_bound_partial(pk, m, resolution=res, restarts=2).bound
              for res in ((2, 4), (4, 8), (8, 16))]
    assert bounds[0] >= bounds[1] >= bounds[2]
    assert bounds[2] <= re_bound_convex(reference_element, m).bound + 1e-9
    result = re_bound_partial(pk, m, resolution=(2, 4), restarts=2)
    assert not result.certified
    assert result.resolution == [2, 4]


def test_partial_sweep_on_collapsed_region():
    # g(0.6) = 4/9, so νz = 2/3 leaves a single element
    pk = PartialPovmKnowledge(scale=0.6, z_component=2.0 / 3.0)
    element = PovmElement(dim=2, scale=0.6, direction=[0.0, 0.0, 2.0 / 3.0])
    m = 0.6
    swept = re_bound_partial(pk, m, resolution=(4, 8))
    assert swept.bound == pytest.approx(re_bound_convex(element, m).bound)


def test_partial_sweep_rejects_empty_region():
    with pytest.raises(InconsistentStatisticsError):
        re_bound_partial(PartialPovmKnowledge(scale=0.6, z_component=0.9), 0.6)


def test_convex_bound_never_exceeds_generating_state_coherence():
    rng = make_rng(17)
    for _ in range(200):
        element = random_qubit_element(rng)
        state = DensityMatrix(random_density_matrix(2, rng))
        m = exact_probability(state, element)
        assert re_bound_convex(element, m, restarts=2).bound <= c_re(state) + 1e-6


@pytest.mark.slow
def test_partial_sweep_refines_downward_on_random_instances():
    rng = make_rng(23)
    for _ in range(20):
        element = random_qubit_element(rng)
        state = DensityMatrix(random_pure_state(2, rng) * 0.9 + 0.05 * np.eye(2))
        m = exact_probability(state, element)
        pk = PartialPovmKnowledge(scale=element.a, z_component=float(element.nu[2]))
        bounds = [re_bound_partial(pk, m, resolution=res, restarts=1, workers=1).bound
                  for res in ((8, 16), (16, 32), (32, 64))]
        assert bounds[0] >= bounds[1] >= bounds[2]
        assert bounds[2] <= re_bound_convex(element, m).bound + 1e-6
