"""Dense Hermitian linear algebra and SU(d) Bloch representations."""

from .bloch import bloch_to_operator, max_bloch_norm, operator_to_bloch
from .generators import diagonal_indices, off_diagonal_pairs, su_generators
from .linalg import (
    dephase,
    herm_eig,
    herm_exp,
    herm_log,
    is_psd,
    von_neumann_entropy,
)

__all__ = [
    "bloch_to_operator",
    "max_bloch_norm",
    "operator_to_bloch",
    "diagonal_indices",
    "off_diagonal_pairs",
    "su_generators",
    "dephase",
    "herm_eig",
    "herm_exp",
    "herm_log",
    "is_psd",
    "von_neumann_entropy",
]
