"""Seeded random states and POVM elements."""

from typing import Optional

import numpy as np


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """Counter-based generator so every stream is reproducible per seed."""
    return np.random.Generator(np.random.Philox(seed))


def random_ket(d: int, rng: np.random.Generator) -> np.ndarray:
    ket = rng.normal(size=d) + 1j * rng.normal(size=d)
    return ket / np.linalg.norm(ket)


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    ket = random_ket(d, rng)
    return np.outer(ket, ket.conj())


def random_density_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """Hilbert–Schmidt distributed state ρ = GG†/Tr[GG†]."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_density_batch(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(count, d, d)) + 1j * rng.normal(size=(count, d, d))
    rho = g @ np.conj(np.transpose(g, (0, 2, 1)))
    traces = np.einsum("kii->k", rho).real
    return rho / traces[:, None, None]


def random_povm_element(d: int, rng: np.random.Generator, margin: float = 0.02):
    """Random element M with margin <= eig(M) <= 1 - margin."""
    from cohcert.models.states import PovmElement

    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = 0.5 * (g + g.conj().T)
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    spread = rng.uniform(margin, 1.0 - margin, size=d)
    matrix = (eigenvectors * spread) @ eigenvectors.conj().T
    return PovmElement.from_matrix(matrix)


def random_qubit_element(rng: np.random.Generator, a_range=(0.05, 0.95)):
    """Qubit element with a uniform in a_range and ‖ν‖ uniform in the allowed ball."""
    from cohcert.models.states import PovmElement

    a = rng.uniform(*a_range)
    limit = min(1.0, (1.0 - a) / a)
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return PovmElement(dim=2, scale=a, direction=direction * limit * rng.uniform(0.0, 1.0))
