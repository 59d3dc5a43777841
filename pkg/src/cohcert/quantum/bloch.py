"""Conversions between matrices and generalized Bloch coordinates."""

import numpy as np

from cohcert.errors import ShapeError, ValidationError
from cohcert.quantum.generators import generator_stack
from cohcert.quantum.linalg import as_matrix, require_hermitian

TRACE_TOL = 1e-12


def coords_of(value) -> np.ndarray:
    return np.asarray(getattr(value, "coords", value), dtype=float)


def check_length(d: int, coords: np.ndarray) -> None:
    if coords.ndim != 1 or coords.shape[0] != d * d - 1:
        raise ShapeError(
            f"Bloch vector for d={d} needs {d * d - 1} components, got shape {coords.shape}"
        )


def expand(d: int, coords) -> np.ndarray:
    """Σᵢ cᵢ λ̂ᵢ for real coefficients c."""
    coords = coords_of(coords)
    check_length(d, coords)
    return np.tensordot(coords, generator_stack(d), axes=1)


def bloch_to_operator(d: int, r) -> np.ndarray:
    """(𝕀 + Σ rᵢ λ̂ᵢ)/d. Hermitian with unit trace; positivity is not checked."""
    return (np.eye(d, dtype=np.complex128) + expand(d, r)) / d


def bloch_coordinates(value, d: int) -> np.ndarray:
    """Raw coordinates rᵢ = (d/2)·Tr[X λ̂ᵢ] for any Hermitian X."""
    matrix = as_matrix(value)
    if matrix.shape != (d, d):
        raise ShapeError(f"Expected a {d}x{d} matrix, got {matrix.shape}")
    matrix = require_hermitian(matrix)
    traces = np.einsum("kij,ji->k", generator_stack(d), matrix)
    return (d / 2.0) * traces.real


def operator_to_bloch(rho, d: int):
    """Bloch vector of a Hermitian unit-trace matrix."""
    from cohcert.models.states import BlochVector

    matrix = as_matrix(rho)
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValidationError(f"Trace must be 1, got {trace:.12g}", {"trace": trace.real})
    return BlochVector(dim=d, coords=bloch_coordinates(matrix, d))


def max_bloch_norm(d: int) -> float:
    """Bloch length of any pure state, √(d(d−1)/2)."""
    return float(np.sqrt(d * (d - 1) / 2.0))
