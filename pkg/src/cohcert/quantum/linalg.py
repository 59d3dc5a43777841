"""Dense Hermitian linear algebra on small complex matrices."""

from typing import Callable, Tuple

import numpy as np

from cohcert.errors import ShapeError, SingularityError, ValidationError

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-9
SINGULAR_TOL = 1e-14


def as_matrix(value) -> np.ndarray:
    """Return the complex ndarray behind a matrix-like value.

    Accepts raw arrays and any model object exposing a ``matrix`` attribute.
    """
    matrix = getattr(value, "matrix", value)
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"Expected a square matrix, got shape {matrix.shape}")
    return matrix


def hermitian_residual(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0


def require_hermitian(value, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate and symmetrize a Hermitian matrix."""
    matrix = as_matrix(value)
    residual = hermitian_residual(matrix)
    if residual > tol:
        raise ValidationError(
            f"Matrix is not Hermitian (residual {residual:.3e} > {tol:.0e})",
            {"residual": residual},
        )
    return 0.5 * (matrix + matrix.conj().T)


def herm_eig(value) -> Tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns:
        Real eigenvalues in ascending order and the unitary whose columns are
        the matching eigenvectors.
    """
    matrix = require_hermitian(value)
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    return eigenvalues, eigenvectors


def herm_fn(value, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum."""
    eigenvalues, eigenvectors = herm_eig(value)
    return (eigenvectors * fn(eigenvalues)) @ eigenvectors.conj().T


def herm_exp(value) -> np.ndarray:
    return herm_fn(value, np.exp)


def herm_log(value) -> np.ndarray:
    """Natural logarithm of a positive-definite matrix."""
    eigenvalues, eigenvectors = herm_eig(value)
    smallest = float(eigenvalues[0])
    if smallest <= SINGULAR_TOL:
        raise SingularityError(
            f"Matrix logarithm undefined: eigenvalue {smallest:.3e} <= {SINGULAR_TOL:.0e}",
            {"eigenvalue": smallest},
        )
    return (eigenvectors * np.log(eigenvalues)) @ eigenvectors.conj().T


def min_eigenvalue(value) -> float:
    return float(herm_eig(value)[0][0])


def is_psd(value, tol: float = PSD_TOL) -> bool:
    return min_eigenvalue(value) >= -tol


def dephase(value) -> np.ndarray:
    """Keep only the diagonal in the computational basis."""
    matrix = as_matrix(value)
    return np.diag(np.diag(matrix))


def shannon_entropy(probabilities: np.ndarray) -> float:
    """Entropy in bits with 0·log₂0 = 0; tiny negative round-off is dropped."""
    p = np.asarray(probabilities, dtype=float)
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def binary_entropy(p: float) -> float:
    return shannon_entropy(np.array([p, 1.0 - p]))


def von_neumann_entropy(rho) -> float:
    """S(ρ) in bits, clipped to [0, log₂ d]."""
    eigenvalues = herm_eig(rho)[0]
    dim = len(eigenvalues)
    return min(shannon_entropy(eigenvalues), float(np.log2(dim)))
