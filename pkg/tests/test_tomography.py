import numpy as np
import pytest
from numpy.testing import assert_allclose

from cohcert.errors import (
    DegenerateStatisticsError,
    InconsistentStatisticsError,
    InformationallyIncompleteError,
    NoisyStatisticsError,
)
from cohcert.models.states import (
    AncillaSet,
    DensityMatrix,
    PovmElement,
    qubit_default_ancillas,
    z_basis_ancillas,
)
from cohcert.quantum.random import random_density_matrix, random_povm_element, random_qubit_element
from cohcert.scenario.simulator import run_session
from cohcert.tomography.inversion import (
    full_tomography_qubit,
    full_tomography_qudit,
    partial_tomography_z,
)

from conftest import qutrit_ic_ancillas


def test_reference_statistics_invert():
    element = full_tomography_qubit([0.75, 0.45, 0.9, 0.75])
    assert element.a == pytest.approx(0.6)
    assert_allclose(element.nu, [0.5, 0.25, 0.25], atol=1e-12)


def test_exact_round_trip_on_random_qubit_elements(rng):
    ancillas = qubit_default_ancillas()
    state = DensityMatrix.maximally_mixed(2)
    for _ in range(50):
        element = random_qubit_element(rng)
        stats = run_session(state, element, ancillas)
        recovered = full_tomography_qubit(stats.n)
        assert abs(recovered.a - element.a) <= 1e-12
        assert np.max(np.abs(recovered.nu - element.nu)) <= 1e-12


def test_sampled_statistics_within_three_sigma(rng):
    ancillas = qubit_default_ancillas()
    state = DensityMatrix.maximally_mixed(2)
    shots = 10**6
    hits = 0
    for seed in range(100):
        element = random_qubit_element(rng, a_range=(0.2, 0.8))
        stats = run_session(state, element, ancillas, shots=shots, seed=seed)
        exact = run_session(state, element, ancillas)
        sigma = max(np.sqrt(p * (1 - p) / shots) for p in exact.n.values())
        scale = (stats.n["0"] + stats.n["1"]) / 2
        hits += abs(scale - element.a) <= 3 * sigma
    assert hits >= 99


def test_qutrit_round_trip(rng):
    ancillas = qutrit_ic_ancillas()
    element = random_povm_element(3, rng)
    stats = run_session(DensityMatrix(random_density_matrix(3, rng)), element, ancillas)
    recovered = full_tomography_qudit(stats.n, ancillas)
    assert abs(recovered.a - element.a) <= 1e-9
    assert np.max(np.abs(recovered.nu - element.nu)) <= 1e-9


def test_incomplete_ancillas_report_deficiency(rng):
    ancillas = z_basis_ancillas(3)
    with pytest.raises(InformationallyIncompleteError) as info:
        full_tomography_qudit({"0": 0.5, "1": 0.5, "2": 0.5}, ancillas)
    assert info.value.deficiency == 6


def test_inconsistent_qudit_statistics(rng):
    s = 1.0 / np.sqrt(2.0)
    extra = ("01-", DensityMatrix.from_ket([s, -s, 0.0]))
    ancillas = AncillaSet(dim=3, states=qutrit_ic_ancillas().states + (extra,))
    element = random_povm_element(3, rng)
    n = run_session(DensityMatrix.maximally_mixed(3), element, ancillas).n
    n["0"] = min(1.0, n["0"] + 0.2)
    with pytest.raises(InconsistentStatisticsError):
        full_tomography_qudit(n, ancillas)


def test_degenerate_and_noisy_statistics():
    with pytest.raises(DegenerateStatisticsError):
        full_tomography_qubit([0.0, 0.0, 0.0, 0.0])
    with pytest.raises(NoisyStatisticsError):
        full_tomography_qubit([0.5, 0.5, 1.0, 1.0])


def test_partial_tomography():
    pk = partial_tomography_z(0.75, 0.45)
    assert pk.a == pytest.approx(0.6)
    assert pk.nu_z == pytest.approx(0.25)
    with pytest.raises(DegenerateStatisticsError):
        partial_tomography_z(0.0, 0.0)


def _estimator_sigmas(n, shots):
    # first-order propagation through a = (n0 + n1)/2 and ν = (n+/a − 1, n+i/a − 1, (n0 − n1)/2a)
    var = {label: p * (1.0 - p) / shots for label, p in n.items()}
    a = (n["0"] + n["1"]) / 2.0
    var_a = (var["0"] + var["1"]) / 4.0
    in_plane = [np.sqrt(var[label] / a**2 + (n[label] / a**2) ** 2 * var_a) for label in ("+", "+i")]
    diff = n["0"] - n["1"]
    var_z = ((1.0 / (2 * a) - diff / (4 * a**2)) ** 2 * var["0"]
             + (1.0 / (2 * a) + diff / (4 * a**2)) ** 2 * var["1"])
    return np.sqrt(var_a), np.array(in_plane + [np.sqrt(var_z)])


@pytest.mark.slow
def test_sampled_tomography_recovers_scale_and_direction(rng):
    ancillas = qubit_default_ancillas()
    state = DensityMatrix.maximally_mixed(2)
    shots = 10**6
    checks, hits = 0, 0
    for seed in range(100):
        drawn = random_qubit_element(rng, a_range=(0.2, 0.8))
        element = PovmElement(dim=2, scale=drawn.a, direction=0.9 * drawn.nu)
        exact = run_session(state, element, ancillas).n
        sampled = run_session(state, element, ancillas, shots=shots, seed=seed).n
        recovered = full_tomography_qubit(sampled)
        sigma_a, sigma_nu = _estimator_sigmas(exact, shots)
        hits += abs(recovered.a - element.a) <= 3 * sigma_a
        hits += int(np.sum(np.abs(recovered.nu - element.nu) <= 3 * sigma_nu + 1e-12))
        checks += 4
    assert hits >= checks - 8
