"""Standard SU(d) generators built from elementary matrices.

Ordering follows the index formulas

    λ[(i-1)² + 2(j-1)] = Θ_i^j    (real symmetric off-diagonal)
    λ[(i-1)² + 2j - 1] = β_i^j    (imaginary antisymmetric off-diagonal)
    λ[i² - 1]          = η_{i-1}  (diagonal)

for 1 <= j < i <= d, with 1-based generator indices. For d = 2 this yields the
Pauli matrices (σx, σy, σz) and for d = 3 the Gell-Mann matrices.
"""

from functools import lru_cache
from typing import List, NamedTuple, Tuple

import numpy as np

from cohcert.errors import InvalidDimensionError


class OffDiagonalPair(NamedTuple):
    """Generator positions (0-based) feeding the (row, col) coherence."""

    row: int
    col: int
    theta: int
    beta: int


def elementary(i: int, j: int, d: int) -> np.ndarray:
    """e_i^j: unit entry on row j, column i (1-based)."""
    e = np.zeros((d, d), dtype=np.complex128)
    e[j - 1, i - 1] = 1.0
    return e


def theta_generator(i: int, j: int, d: int) -> np.ndarray:
    return elementary(i, j, d) + elementary(j, i, d)


def beta_generator(i: int, j: int, d: int) -> np.ndarray:
    return -1j * (elementary(i, j, d) - elementary(j, i, d))


def eta_generator(k: int, d: int) -> np.ndarray:
    diagonal = np.zeros(d)
    diagonal[:k] = 1.0
    diagonal[k] = -k
    return np.sqrt(2.0 / (k * (k + 1))) * np.diag(diagonal).astype(np.complex128)


def _check_dim(d: int) -> None:
    if int(d) != d or d < 2:
        raise InvalidDimensionError(f"Dimension must be an integer >= 2, got {d}")


@lru_cache(maxsize=None)
def _generators(d: int) -> Tuple[np.ndarray, ...]:
    slots: List[np.ndarray] = [None] * (d * d - 1)
    for i in range(2, d + 1):
        for j in range(1, i):
            slots[(i - 1) ** 2 + 2 * (j - 1) - 1] = theta_generator(i, j, d)
            slots[(i - 1) ** 2 + 2 * j - 1 - 1] = beta_generator(i, j, d)
        slots[i * i - 1 - 1] = eta_generator(i - 1, d)
    for generator in slots:
        generator.setflags(write=False)
    return tuple(slots)


def su_generators(d: int) -> List[np.ndarray]:
    """Return the d²−1 generators, each Hermitian, traceless, Tr[λᵢλⱼ] = 2δᵢⱼ."""
    _check_dim(d)
    return list(_generators(int(d)))


@lru_cache(maxsize=None)
def generator_stack(d: int) -> np.ndarray:
    """Generators stacked into a read-only (d²−1, d, d) array."""
    _check_dim(d)
    stack = np.array(_generators(int(d)))
    stack.setflags(write=False)
    return stack


def off_diagonal_pairs(d: int) -> List[OffDiagonalPair]:
    """(Θ, β) generator index pairs for every entry above the diagonal."""
    _check_dim(d)
    pairs = []
    for i in range(2, d + 1):
        for j in range(1, i):
            pairs.append(
                OffDiagonalPair(
                    row=j - 1,
                    col=i - 1,
                    theta=(i - 1) ** 2 + 2 * (j - 1) - 1,
                    beta=(i - 1) ** 2 + 2 * j - 2,
                )
            )
    return pairs


def diagonal_indices(d: int) -> List[int]:
    """0-based positions of the diagonal generators η_1 … η_{d-1}."""
    _check_dim(d)
    return [k * k - 2 for k in range(2, d + 1)]
