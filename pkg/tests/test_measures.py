import numpy as np
import pytest

from cohcert.coherence.measures import c_l1, c_l1_bloch, c_re, c_re_bloch, coherence
from cohcert.errors import ValidationError
from cohcert.models.states import DensityMatrix
from cohcert.quantum.bloch import operator_to_bloch
from cohcert.quantum.linalg import von_neumann_entropy
from cohcert.quantum.random import random_density_matrix


def test_maximally_coherent_qubit():
    plus = DensityMatrix.from_bloch(2, [1.0, 0.0, 0.0])
    assert c_re(plus) == pytest.approx(1.0)
    assert c_l1(plus) == pytest.approx(1.0)


def test_incoherent_states_have_zero_coherence():
    state = DensityMatrix(np.diag([0.2, 0.3, 0.5]))
    assert c_re(state) == pytest.approx(0.0, abs=1e-12)
    assert c_l1(state) == 0.0


def test_maximally_coherent_qudit():
    d = 4
    ket = np.ones(d) / np.sqrt(d)
    state = DensityMatrix.from_ket(ket)
    assert c_re(state) == pytest.approx(np.log2(d))
    assert c_l1(state) == pytest.approx(d - 1)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_bloch_l1_matches_matrix_l1(d, rng):
    rho = random_density_matrix(d, rng)
    r = operator_to_bloch(rho, d)
    assert c_l1_bloch(d, r) == pytest.approx(c_l1(rho), abs=1e-12)


def test_qubit_closed_form_matches_matrix(rng):
    for _ in range(20):
        rho = random_density_matrix(2, rng)
        r = operator_to_bloch(rho, 2)
        assert c_re_bloch(r) == pytest.approx(c_re(rho), abs=1e-10)


def test_measure_dispatch():
    plus = DensityMatrix.from_bloch(2, [1.0, 0.0, 0.0])
    assert coherence(plus, "re") == pytest.approx(1.0)
    assert coherence(plus, "l1") == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        coherence(plus, "robustness")


@pytest.mark.parametrize("measure", [c_l1, c_re])
@pytest.mark.parametrize("d", [2, 3])
def test_measures_are_convex(measure, d, rng):
    for _ in range(50):
        rho, sigma = random_density_matrix(d, rng), random_density_matrix(d, rng)
        p = rng.uniform()
        mixture = measure(p * rho + (1.0 - p) * sigma)
        assert mixture <= p * measure(rho) + (1.0 - p) * measure(sigma) + 1e-9


def _random_unitary(d, rng):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_entropy_is_unitarily_invariant(d, rng):
    for _ in range(20):
        rho = random_density_matrix(d, rng)
        u = _random_unitary(d, rng)
        rotated = u @ rho @ u.conj().T
        assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-10)


def test_relative_entropy_is_invariant_under_incoherent_unitaries(rng):
    for _ in range(20):
        rho = random_density_matrix(3, rng)
        phases = np.diag(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=3)))
        permutation = np.eye(3)[rng.permutation(3)]
        u = permutation @ phases
        assert c_re(u @ rho @ u.conj().T) == pytest.approx(c_re(rho), abs=1e-10)
        assert c_l1(u @ rho @ u.conj().T) == pytest.approx(c_l1(rho), abs=1e-10)
