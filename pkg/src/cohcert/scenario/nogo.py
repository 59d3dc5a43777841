"""Incoherent reconstructions for the two rejected test scenarios.

Both functions return a certificate whose incoherent state and measurements
reproduce the supplied statistics exactly, which is why neither scenario can
witness coherence on its own.
"""

from typing import Dict, Hashable, List, Mapping, Sequence, Tuple

import numpy as np
from loguru import logger

from cohcert.errors import ShapeError, ValidationError
from cohcert.models.results import ReconstructionCertificate
from cohcert.models.states import AncillaSet, DensityMatrix
from cohcert.quantum.linalg import as_matrix, herm_eig

NORMALIZATION_TOL = 1e-12
POVM_TOL = 1e-10


def povm_residual(elements: Sequence[np.ndarray]) -> float:
    """Worst violation of positivity or completeness across a POVM."""
    elements = [as_matrix(e) for e in elements]
    identity = np.eye(elements[0].shape[0])
    completeness = float(np.max(np.abs(sum(elements) - identity)))
    negativity = max(0.0, -min(float(herm_eig(e)[0][0]) for e in elements))
    return max(completeness, negativity)


def check_povm(elements: Sequence[np.ndarray], tol: float = POVM_TOL) -> float:
    residual = povm_residual(elements)
    if residual > tol:
        raise ValidationError(
            f"Measurement is not a valid POVM (residual {residual:.3e})",
            {"residual": residual},
        )
    return residual


def nogo_fully_di(
    p_table: Mapping[Tuple[Hashable, Hashable], float], dim: int = 2
) -> ReconstructionCertificate:
    """Reproduce p(a|x) with σ = |0⟩⟨0| and N^x_a = p(a|x)·𝕀."""
    by_input: Dict[Hashable, Dict[Hashable, float]] = {}
    for (a, x), p in p_table.items():
        p = float(p)
        if not 0.0 <= p <= 1.0:
            raise ValidationError(f"p({a}|{x}) = {p} outside [0, 1]")
        by_input.setdefault(x, {})[a] = p
    if not by_input:
        raise ValidationError("Empty probability table")

    sigma = np.zeros((dim, dim), dtype=np.complex128)
    sigma[0, 0] = 1.0
    identity = np.eye(dim, dtype=np.complex128)

    measurements: Dict[str, np.ndarray] = {}
    reproduced: Dict[str, float] = {}
    deviation = 0.0
    residual = 0.0
    for x, outcomes in by_input.items():
        total = sum(outcomes.values())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(
                f"Outcome probabilities for input {x} sum to {total:.15g}, expected 1",
                {"input": str(x), "sum": total},
            )
        elements = []
        for a, p in outcomes.items():
            element = p * identity
            elements.append(element)
            measurements[f"N[{x}][{a}]"] = element
            value = float(np.real(np.trace(sigma @ element)))
            reproduced[f"{a}|{x}"] = value
            deviation = max(deviation, abs(value - p))
        residual = max(residual, check_povm(elements))

    logger.debug(f"Fully-DI reconstruction over {len(by_input)} inputs, deviation {deviation:.2e}")
    return ReconstructionCertificate(
        incoherent_state=sigma,
        measurements=measurements,
        reproduced=reproduced,
        max_deviation=deviation,
        povm_residual=residual,
    )


def spectral_decomposition(rho) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenpairs in descending order, each eigenvector's first nonzero entry real-positive."""
    eigenvalues, eigenvectors = herm_eig(rho)
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    eigenvectors = eigenvectors[:, order]
    for k in range(eigenvectors.shape[1]):
        column = eigenvectors[:, k]
        lead = column[np.argmax(np.abs(column) > 1e-12)]
        eigenvectors[:, k] = column * (np.abs(lead) / lead)
    return eigenvalues, eigenvectors


def nogo_joint(
    rho: DensityMatrix, joint_elements: Sequence[np.ndarray], ancillas: AncillaSet
) -> ReconstructionCertificate:
    """Move ρ's spectrum onto the diagonal and conjugate the joint POVM to match.

    σ = Σ λᵢ|i⟩⟨i| and N_a = Σⱼ (|j⟩⟨ψⱼ| ⊗ 𝕀) M_a (|ψⱼ⟩⟨j| ⊗ 𝕀).
    """
    d, t = rho.dim, ancillas.dim
    elements: List[np.ndarray] = [as_matrix(e) for e in joint_elements]
    if not elements:
        raise ValidationError("Joint measurement has no elements")
    for element in elements:
        if element.shape != (d * t, d * t):
            raise ShapeError(
                f"Joint element has shape {element.shape}, expected {(d * t, d * t)}"
            )
    check_povm(elements)

    eigenvalues, eigenvectors = spectral_decomposition(rho.matrix)
    sigma = np.diag(np.clip(eigenvalues, 0.0, None)).astype(np.complex128)
    identity_t = np.eye(t, dtype=np.complex128)
    transfers = []
    for j in range(d):
        ket_j = np.zeros(d, dtype=np.complex128)
        ket_j[j] = 1.0
        transfers.append(np.kron(np.outer(ket_j, eigenvectors[:, j].conj()), identity_t))

    conjugated = [sum(k @ m @ k.conj().T for k in transfers) for m in elements]
    residual = check_povm(conjugated)

    measurements: Dict[str, np.ndarray] = {}
    reproduced: Dict[str, float] = {}
    deviation = 0.0
    for a, (original, replaced) in enumerate(zip(elements, conjugated)):
        measurements[f"N[{a}]"] = replaced
        for label, tau in ancillas:
            target = float(np.real(np.trace(np.kron(rho.matrix, tau.matrix) @ original)))
            value = float(np.real(np.trace(np.kron(sigma, tau.matrix) @ replaced)))
            reproduced[f"{a}|{label}"] = value
            deviation = max(deviation, abs(value - target))

    logger.debug(f"Joint reconstruction over {len(ancillas)} ancillas, deviation {deviation:.2e}")
    return ReconstructionCertificate(
        incoherent_state=sigma,
        measurements=measurements,
        reproduced=reproduced,
        max_deviation=deviation,
        povm_residual=residual,
    )


def bell_povm() -> List[np.ndarray]:
    """Projectors onto the four Bell states of two qubits."""
    s = 1.0 / np.sqrt(2.0)
    kets = [
        np.array([s, 0, 0, s]),
        np.array([s, 0, 0, -s]),
        np.array([0, s, s, 0]),
        np.array([0, s, -s, 0]),
    ]
    return [np.outer(k, k.conj()).astype(np.complex128) for k in kets]
