import numpy as np
import pytest
from numpy.testing import assert_allclose

from cohcert.errors import ShapeError, ValidationError
from cohcert.models.states import DensityMatrix
from cohcert.quantum.bloch import bloch_to_operator, max_bloch_norm, operator_to_bloch
from cohcert.quantum.linalg import is_psd
from cohcert.quantum.random import random_pure_state


def test_simple_qubit_conversions():
    assert_allclose(bloch_to_operator(2, [0, 0, 0]), np.eye(2) / 2)
    assert_allclose(bloch_to_operator(2, [1, 0, 0]), 0.5 * np.ones((2, 2)))
    assert_allclose(operator_to_bloch(np.diag([1.0, 0.0]), 2).coords, [0, 0, 1], atol=1e-15)
    assert_allclose(operator_to_bloch(np.eye(2) / 2, 2).coords, [0, 0, 0], atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_round_trip_on_hermitian_matrices(d, rng):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = g + g.conj().T
    h = h - np.trace(h) / d * np.eye(d) + np.eye(d) / d
    r = operator_to_bloch(h, d)
    assert np.max(np.abs(bloch_to_operator(d, r.coords) - h)) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 5])
def test_pure_states_have_maximal_length(d, rng):
    rho = random_pure_state(d, rng)
    assert abs(operator_to_bloch(rho, d).norm - max_bloch_norm(d)) < 1e-9


def test_qutrit_ball_point_that_is_not_a_state():
    # diag((1+√3)/3, (1−√3)/3, 1/3): inside the ball, yet not positive
    r = np.zeros(8)
    r[2] = np.sqrt(3.0)
    assert np.linalg.norm(r) <= max_bloch_norm(3) + 1e-9
    matrix = bloch_to_operator(3, r)
    assert_allclose(np.diag(matrix).real, [(1 + np.sqrt(3)) / 3, (1 - np.sqrt(3)) / 3, 1 / 3])
    assert not is_psd(matrix)
    with pytest.raises(ValidationError):
        DensityMatrix(matrix)


def test_qubit_ball_is_the_state_set(rng):
    for _ in range(50):
        r = rng.normal(size=3)
        r *= rng.uniform() / np.linalg.norm(r)
        assert is_psd(bloch_to_operator(2, r))


def test_errors():
    with pytest.raises(ShapeError):
        bloch_to_operator(2, [1.0, 0.0])
    with pytest.raises(ValidationError):
        operator_to_bloch(np.eye(2), 2)
