import numpy as np
import pytest
from numpy.testing import assert_allclose

from cohcert.bounds.l1 import (
    l1_bound_convex,
    l1_lower_bound_partial,
    l1_lower_bound_qubit,
    l1_lower_bound_qudit,
    normalize_element,
    tight_state,
    witnessable,
)
from cohcert.coherence.measures import c_l1, c_l1_bloch
from cohcert.errors import InfeasibleStatisticsError, PreconditionError
from cohcert.models.results import L1Branch
from cohcert.models.states import PovmElement
from cohcert.models.statistics import PartialPovmKnowledge
from cohcert.quantum.generators import diagonal_indices
from cohcert.quantum.random import random_density_matrix, random_pure_state, random_qubit_element
from cohcert.scenario.simulator import exact_probability
from cohcert.models.states import DensityMatrix

NU = np.array([0.5, 0.25, 0.25])


def expected_reference_bound():
    a_in, b, t = np.hypot(0.5, 0.25), 0.25, 0.5
    return (t * a_in - b * np.sqrt(a_in**2 + b**2 - t**2)) / (a_in**2 + b**2)


def test_reference_instance():
    result = l1_lower_bound_qubit(0.6, NU, 0.9)
    assert result.witness
    assert result.branch is L1Branch.CASE2
    assert result.bound == pytest.approx(expected_reference_bound(), abs=1e-12)
    assert result.bound == pytest.approx(0.5097, abs=1e-4)


def test_tight_state_for_reference_instance():
    r = tight_state(0.6, NU, 0.9).coords
    assert np.linalg.norm(r) == pytest.approx(1.0, abs=1e-9)
    assert 0.6 * (1 + NU @ r) == pytest.approx(0.9, abs=1e-9)
    assert c_l1_bloch(2, r) == pytest.approx(expected_reference_bound(), abs=1e-9)
    assert NU[0] * r[1] == pytest.approx(NU[1] * r[0], abs=1e-9)


def test_witness_threshold_for_x_states():
    # (𝕀 + q·σx)/2 gives m = 0.6(1 + q/2): witnessable only for q > 1/2
    assert not witnessable(0.6, NU, 0.6 * 1.25)
    assert witnessable(0.6, NU, 0.6 * 1.3)
    assert l1_lower_bound_qubit(0.6, NU, 0.75).bound == 0.0


def test_case_one_reduces_to_ratio():
    nu = np.array([0.3, 0.4, 0.0])
    m = 0.5 * (1 + 0.2)
    result = l1_lower_bound_qubit(0.5, nu, m)
    assert result.branch is L1Branch.CASE1
    assert result.bound == pytest.approx(0.2 / 0.5)
    r = tight_state(0.5, nu, m).coords
    assert np.linalg.norm(r) == pytest.approx(1.0, abs=1e-9)
    assert c_l1_bloch(2, r) == pytest.approx(0.4, abs=1e-9)


def test_flipped_element():
    # m below a: the complementary element carries the witness
    result = l1_lower_bound_qubit(0.6, NU, 0.3)
    assert result.element_flipped
    instance = normalize_element(0.6, NU, 0.3)
    assert instance.a == pytest.approx(0.4)
    assert instance.m == pytest.approx(0.7)
    assert_allclose(instance.nu, -0.6 * NU / 0.4)
    assert instance.excess >= 0.0


def test_infeasible_statistics():
    with pytest.raises(InfeasibleStatisticsError):
        l1_lower_bound_qubit(0.6, NU, 0.99)
    with pytest.raises(InfeasibleStatisticsError):
        l1_lower_bound_qubit(0.5, [0.0, 0.0, 0.0], 0.7)


def test_tight_state_precondition():
    with pytest.raises(PreconditionError):
        tight_state(0.6, NU, 0.7)


def _random_instance(rng):
    element = random_qubit_element(rng)
    state = DensityMatrix(random_pure_state(2, rng) * 0.9 + 0.05 * np.eye(2))
    return element, exact_probability(state, element), state


@pytest.mark.slow
def test_witness_and_tightness_on_random_instances(rng):
    checked = 0
    for _ in range(10_000):
        element, m, _ = _random_instance(rng)
        a, nu = element.a, element.nu
        excess = m / a - 1.0
        if abs(abs(nu[2]) - abs(excess)) < 1e-6:
            continue
        result = l1_lower_bound_qubit(a, nu, m)
        assert witnessable(a, nu, m) == (result.bound > 0.0)
        if result.witness:
            r = tight_state(a, nu, m).coords
            assert np.linalg.norm(r) == pytest.approx(1.0, abs=1e-9)
            assert a * (1 + nu @ r) == pytest.approx(m, abs=1e-9)
            assert c_l1_bloch(2, r) == pytest.approx(result.bound, abs=1e-9)
            checked += 1
    assert checked > 0


def test_qudit_reduces_to_qubit(rng):
    for _ in range(200):
        element, m, _ = _random_instance(rng)
        qubit = l1_lower_bound_qubit(element.a, element.nu, m).bound
        assert l1_lower_bound_qudit(element.a, element.nu, m, 2) == pytest.approx(qubit, abs=1e-10)


def test_qudit_bound_is_tight_for_single_coherence_element():
    # M = |+⟩⟨+|/2 on the (0,1) block plus |2⟩⟨2|/4: a = 1/4, ν = (1, 0, ..., 0)
    nu = np.zeros(8)
    nu[0] = 1.0
    element = PovmElement(dim=3, scale=0.25, direction=nu)
    assert l1_lower_bound_qudit(element.a, element.nu, 0.4, 3) == pytest.approx(0.6)
    assert l1_lower_bound_qudit(element.a, element.nu, 0.25, 3) == 0.0


def test_partial_bound_is_weaker(rng):
    for _ in range(200):
        element, m, _ = _random_instance(rng)
        pk = PartialPovmKnowledge(scale=element.a, z_component=float(element.nu[2]))
        full = l1_lower_bound_qubit(element.a, element.nu, m).bound
        assert l1_lower_bound_partial(pk, m) <= full + 1e-12


def test_numerical_minimum_matches_closed_form(reference_element):
    for q in (0.6, 0.8, 1.0):
        m = 0.6 * (1 + 0.5 * q)
        numeric = l1_bound_convex(reference_element, m).bound
        assert numeric == pytest.approx(l1_lower_bound_qubit(0.6, NU, m).bound, abs=1e-3)
    assert l1_bound_convex(reference_element, 0.7).bound == 0.0


@pytest.mark.slow
def test_bound_never_exceeds_generating_state_coherence(rng):
    for _ in range(10_000):
        element, m, state = _random_instance(rng)
        assert l1_lower_bound_qubit(element.a, element.nu, m).bound <= c_l1(state) + 1e-9


def test_qutrit_bound_never_exceeds_generating_state_coherence(rng):
    nu = np.zeros(8)
    nu[0], nu[3] = 0.6, 0.3
    element = PovmElement(dim=3, scale=0.3, direction=nu)
    for _ in range(500):
        state = DensityMatrix(random_density_matrix(3, rng))
        m = exact_probability(state, element)
        assert l1_lower_bound_qudit(element.a, element.nu, m, 3) <= c_l1(state) + 1e-9


def test_diagonal_qutrit_element_certifies_nothing(rng):
    # a diagonal M is reproduced by the dephased state, which is incoherent
    nu = np.zeros(8)
    first, second = diagonal_indices(3)
    nu[first], nu[second] = 0.2, 0.1
    element = PovmElement(dim=3, scale=0.4, direction=nu)
    states = [np.diag(np.eye(3)[k]) for k in range(3)]
    states += [random_density_matrix(3, rng) for _ in range(200)]
    for matrix in states:
        m = exact_probability(DensityMatrix(matrix), element)
        assert l1_lower_bound_qudit(element.a, element.nu, m, 3) == 0.0
