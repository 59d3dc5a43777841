import numpy as np
import pytest

from cohcert.bounds.l1 import l1_lower_bound_qubit, l1_lower_bound_qudit, witnessable
from cohcert.bounds.relative_entropy import re_bound_convex
from cohcert.coherence.measures import c_l1
from cohcert.errors import FeasibilityFailureError
from cohcert.models.results import CoherenceMeasure
from cohcert.models.states import DensityMatrix, PovmElement
from cohcert.oracle import oracle_min_coherence, oracle_witness
from cohcert.quantum.bloch import bloch_to_operator
from cohcert.quantum.random import (
    make_rng,
    random_density_matrix,
    random_povm_element,
    random_pure_state,
    random_qubit_element,
)
from cohcert.scenario.simulator import exact_probability

from conftest import x_state_click

NU = np.array([0.5, 0.25, 0.25])


def test_l1_oracle_agrees_with_closed_form(reference_element):
    result = oracle_min_coherence("l1", reference_element, 0.9)
    closed = l1_lower_bound_qubit(0.6, NU, 0.9).bound
    assert result.measure is CoherenceMeasure.L1_NORM
    assert abs(result.minimum - closed) <= 2e-3
    assert result.minimum >= closed - 1e-9
    r = result.argmin.coords
    assert 0.6 * (1 + NU @ r) == pytest.approx(0.9, abs=1e-9)


def test_re_oracle_finds_incoherent_point(reference_element):
    result = oracle_min_coherence("re", reference_element, x_state_click(0.4))
    assert result.minimum <= 1e-3


def test_re_oracle_sits_above_certified_bound(reference_element):
    m = x_state_click(0.9)
    oracle = oracle_min_coherence("relative-entropy", reference_element, m, resolution=401)
    assert re_bound_convex(reference_element, m).bound <= oracle.minimum + 2e-3


def test_infeasible_instance(reference_element):
    with pytest.raises(FeasibilityFailureError):
        oracle_min_coherence("l1", reference_element, 0.99)


def test_witness_examples():
    assert oracle_witness(0.6, NU, 0.9)
    assert not oracle_witness(0.6, NU, 0.75)
    assert not oracle_witness(0.5, [0.4, 0.3, 0.0], 0.5)


@pytest.mark.slow
def test_witness_agrees_with_closed_form_predicate():
    rng = make_rng(11)
    compared = 0
    for _ in range(10_000):
        element = random_qubit_element(rng)
        state = DensityMatrix(random_density_matrix(2, rng))
        a, nu = element.a, element.nu
        m = exact_probability(state, element)
        if abs(abs(nu[2]) - abs(m / a - 1.0)) < 1e-6:
            continue
        assert oracle_witness(a, nu, m, step=1e-4) == witnessable(a, nu, m)
        compared += 1
    assert compared > 9_000


@pytest.mark.slow
def test_qutrit_sampling_bounds_the_l1_certificate():
    nu = np.zeros(8)
    nu[0] = 1.0
    element = PovmElement(dim=3, scale=0.25, direction=nu)
    result = oracle_min_coherence("l1", element, 0.4, slack=1e-3, samples=200, seed=5)
    assert result.samples >= 200
    assert result.slack == 1e-3
    # constraint slack lets sampled states undercut the exact minimum slightly
    assert l1_lower_bound_qudit(0.25, nu, 0.4, 3) <= result.minimum + 5e-3


def test_qutrit_sampling_fails_outside_spectrum():
    nu = np.zeros(8)
    nu[0] = 1.0
    element = PovmElement(dim=3, scale=0.25, direction=nu)
    with pytest.raises(FeasibilityFailureError):
        oracle_min_coherence("l1", element, 0.9, samples=10)


@pytest.mark.slow
def test_qubit_grid_search_matches_closed_form_on_random_instances():
    rng = make_rng(401)
    for _ in range(200):
        element = random_qubit_element(rng)
        state = DensityMatrix(random_pure_state(2, rng) * 0.9 + 0.05 * np.eye(2))
        m = exact_probability(state, element)
        closed = l1_lower_bound_qubit(element.a, element.nu, m).bound
        result = oracle_min_coherence("l1", element, m, resolution=401)
        assert result.minimum >= closed - 1e-9
        assert result.minimum - closed <= 2e-3


@pytest.mark.slow
def test_qutrit_sampling_never_undercuts_certificate_on_random_instances():
    rng = make_rng(9)
    for seed in range(100):
        element = random_povm_element(3, rng)
        m = exact_probability(DensityMatrix(random_density_matrix(3, rng)), element)
        result = oracle_min_coherence(
            "l1", element, m, slack=1e-3, samples=200, seed=seed, workers=1
        )
        # the sampled state sits within the slack, so certify at its own click rate
        best = DensityMatrix(bloch_to_operator(3, result.argmin.coords))
        m_best = exact_probability(best, element)
        assert abs(m_best - m) <= 1e-3 + 1e-9
        bound = l1_lower_bound_qudit(element.a, element.nu, m_best, 3)
        assert bound <= c_l1(best) + 1e-9
        assert c_l1(best) == pytest.approx(result.minimum, abs=1e-9)
