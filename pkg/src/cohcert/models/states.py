"""Data models for quantum states, POVM elements and ancilla sets."""

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from cohcert.errors import ShapeError, ValidationError
from cohcert.quantum.bloch import (
    bloch_coordinates,
    bloch_to_operator,
    check_length,
    expand,
    max_bloch_norm,
)
from cohcert.quantum.linalg import (
    PSD_TOL,
    as_matrix,
    hermitian_residual,
    min_eigenvalue,
)

STATE_TRACE_TOL = 1e-12
STATE_HERMITIAN_TOL = 1e-12
RHO_LABEL = "rho"


@dataclass(frozen=True, eq=False)
class BlochVector:
    """Real coordinates of a unit-trace Hermitian operator over SU(d) generators."""

    dim: int
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        check_length(self.dim, coords)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def within_ball(self, tol: float = 1e-9) -> bool:
        return self.norm <= max_bloch_norm(self.dim) + tol

    def is_pure_length(self, tol: float = 1e-9) -> bool:
        return abs(self.norm - max_bloch_norm(self.dim)) <= tol

    def to_operator(self) -> np.ndarray:
        return bloch_to_operator(self.dim, self.coords)

    def to_state(self) -> "DensityMatrix":
        return DensityMatrix(self.to_operator())

    def tolist(self) -> List[float]:
        return [float(c) for c in self.coords]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite d×d matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(as_matrix(self.matrix), dtype=np.complex128)
        residual = hermitian_residual(matrix)
        if residual > STATE_HERMITIAN_TOL:
            raise ValidationError(
                f"State is not Hermitian (residual {residual:.3e})",
                {"residual": residual},
            )
        matrix = 0.5 * (matrix + matrix.conj().T)
        trace = float(np.trace(matrix).real)
        if abs(trace - 1.0) > STATE_TRACE_TOL:
            raise ValidationError(f"State trace is {trace:.15g}, expected 1", {"trace": trace})
        smallest = min_eigenvalue(matrix)
        if smallest < -PSD_TOL:
            raise ValidationError(
                f"State is not positive semidefinite (eigenvalue {smallest:.6g})",
                {"eigenvalue": smallest},
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_bloch(cls, d: int, coords) -> "DensityMatrix":
        return cls(bloch_to_operator(d, coords))

    @classmethod
    def from_ket(cls, ket) -> "DensityMatrix":
        ket = np.asarray(ket, dtype=np.complex128)
        ket = ket / np.linalg.norm(ket)
        return cls(np.outer(ket, ket.conj()))

    @classmethod
    def basis(cls, d: int, index: int) -> "DensityMatrix":
        ket = np.zeros(d, dtype=np.complex128)
        ket[index] = 1.0
        return cls.from_ket(ket)

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d, dtype=np.complex128) / d)

    def bloch(self) -> BlochVector:
        return BlochVector(dim=self.dim, coords=bloch_coordinates(self.matrix, self.dim))

    def is_diagonal(self, tol: float = 1e-12) -> bool:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return float(np.max(np.abs(off))) <= tol


@dataclass(frozen=True, eq=False)
class PovmElement:
    """M = a(𝕀 + Σ νᵢ λ̂ᵢ) with 0 < M, 𝕀 − M positive semidefinite."""

    dim: int
    scale: float
    direction: np.ndarray

    def __post_init__(self):
        direction = np.array(self.direction, dtype=float)
        check_length(self.dim, direction)
        direction.setflags(write=False)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "scale", float(self.scale))
        if not 0.0 < self.scale < 1.0:
            raise ValidationError(
                f"POVM scale a must lie in (0, 1), got {self.scale}", {"a": self.scale}
            )
        matrix = self.matrix
        low = min_eigenvalue(matrix)
        high = 1.0 - min_eigenvalue(np.eye(self.dim) - matrix)
        if low < -PSD_TOL or high > 1.0 + PSD_TOL:
            raise ValidationError(
                f"Not a POVM element: spectrum [{low:.6g}, {high:.6g}] outside [0, 1]",
                {"min_eigenvalue": low, "max_eigenvalue": high},
            )

    @property
    def a(self) -> float:
        return self.scale

    @property
    def nu(self) -> np.ndarray:
        return self.direction

    @property
    def matrix(self) -> np.ndarray:
        return self.scale * (np.eye(self.dim, dtype=np.complex128) + expand(self.dim, self.direction))

    @classmethod
    def from_matrix(cls, matrix) -> "PovmElement":
        matrix = as_matrix(matrix)
        d = matrix.shape[0]
        a = float(np.trace(matrix).real) / d
        if a <= 0.0:
            raise ValidationError(f"POVM element has non-positive trace {a * d:.6g}")
        # ν = (d/2)·Tr[M λ̂]/(a d)
        direction = bloch_coordinates(matrix / (a * d), d)
        return cls(dim=d, scale=a, direction=direction)

    def complement(self) -> "PovmElement":
        """The element 𝕀 − M in the same parameterization."""
        a = self.scale
        return PovmElement(
            dim=self.dim, scale=1.0 - a, direction=-a * self.direction / (1.0 - a)
        )


@dataclass(frozen=True, eq=False)
class TwoOutcomePovm:
    """The pair {M, 𝕀 − M}."""

    element: PovmElement

    @property
    def dim(self) -> int:
        return self.element.dim

    def matrices(self) -> Tuple[np.ndarray, np.ndarray]:
        m = self.element.matrix
        return m, np.eye(self.dim, dtype=np.complex128) - m


@dataclass(frozen=True)
class AncillaSet:
    """Trusted ancilla preparations τ_x, keyed by string labels."""

    dim: int
    states: Tuple[Tuple[str, DensityMatrix], ...] = field(default_factory=tuple)

    def __post_init__(self):
        states = tuple((str(label), state) for label, state in self.states)
        labels = [label for label, _ in states]
        if len(set(labels)) != len(labels):
            raise ValidationError(f"Ancilla labels must be unique, got {labels}")
        if RHO_LABEL in labels:
            raise ValidationError(f"Label '{RHO_LABEL}' is reserved for the unknown state")
        for label, state in states:
            if state.dim != self.dim:
                raise ShapeError(
                    f"Ancilla '{label}' has dimension {state.dim}, expected {self.dim}"
                )
        object.__setattr__(self, "states", states)

    def __iter__(self) -> Iterator[Tuple[str, DensityMatrix]]:
        return iter(self.states)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.states]

    def get(self, label: str) -> Optional[DensityMatrix]:
        for name, state in self.states:
            if name == label:
                return state
        return None


def qubit_default_ancillas() -> AncillaSet:
    """{|0⟩, |1⟩, |+⟩, |+i⟩}: informationally complete for qubits."""
    s = 1.0 / np.sqrt(2.0)
    return AncillaSet(
        dim=2,
        states=(
            ("0", DensityMatrix.from_ket([1.0, 0.0])),
            ("1", DensityMatrix.from_ket([0.0, 1.0])),
            ("+", DensityMatrix.from_ket([s, s])),
            ("+i", DensityMatrix.from_ket([s, 1j * s])),
        ),
    )


def z_basis_ancillas(d: int = 2) -> AncillaSet:
    """Computational basis states only: enough for partial tomography."""
    return AncillaSet(
        dim=d, states=tuple((str(k), DensityMatrix.basis(d, k)) for k in range(d))
    )
