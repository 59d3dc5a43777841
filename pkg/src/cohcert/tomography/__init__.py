"""Recovering the untrusted POVM element from ancilla statistics."""

from .inversion import full_tomography_qubit, full_tomography_qudit, partial_tomography_z

__all__ = ["full_tomography_qubit", "full_tomography_qudit", "partial_tomography_z"]
