"""Shared fixtures for the cohcert test suite."""

import numpy as np
import pytest

from cohcert.models.states import DensityMatrix, PovmElement, qubit_default_ancillas
from cohcert.quantum.random import make_rng

REFERENCE_A = 0.6
REFERENCE_NU = (0.5, 0.25, 0.25)


@pytest.fixture
def reference_element() -> PovmElement:
    return PovmElement(dim=2, scale=REFERENCE_A, direction=np.array(REFERENCE_NU))


@pytest.fixture
def plus_state() -> DensityMatrix:
    return DensityMatrix.from_bloch(2, [1.0, 0.0, 0.0])


@pytest.fixture
def ancillas():
    return qubit_default_ancillas()


@pytest.fixture
def rng():
    return make_rng(20240611)


def x_state_click(q: float) -> float:
    """m for the state (𝕀 + q·σx)/2 and the reference element."""
    return REFERENCE_A * (1.0 + REFERENCE_NU[0] * q)


def qutrit_ic_ancillas():
    from cohcert.models.states import AncillaSet

    s = 1.0 / np.sqrt(2.0)
    kets = {
        "0": [1, 0, 0],
        "1": [0, 1, 0],
        "2": [0, 0, 1],
        "01+": [s, s, 0],
        "01i": [s, 1j * s, 0],
        "02+": [s, 0, s],
        "02i": [s, 0, 1j * s],
        "12+": [0, s, s],
        "12i": [0, s, 1j * s],
    }
    return AncillaSet(
        dim=3, states=tuple((label, DensityMatrix.from_ket(ket)) for label, ket in kets.items())
    )
