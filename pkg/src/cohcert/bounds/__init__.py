"""Certified lower bounds on coherence from measurement statistics."""

from cohcert.bounds.feasible import (
    FeasibleDisk,
    check_reachable,
    incoherent_feasible,
    incoherent_solution,
    minimize_on_disk,
    spectral_range,
)
from cohcert.bounds.l1 import (
    l1_bound_convex,
    l1_lower_bound_partial,
    l1_lower_bound_qubit,
    l1_lower_bound_qudit,
    normalize_element,
    tight_state,
    witnessable,
)
from cohcert.bounds.relative_entropy import (
    dual_objective,
    dual_state,
    re_bound_convex,
    re_bound_dual,
    re_bound_partial,
)

__all__ = [
    "FeasibleDisk",
    "check_reachable",
    "dual_objective",
    "dual_state",
    "incoherent_feasible",
    "incoherent_solution",
    "l1_bound_convex",
    "l1_lower_bound_partial",
    "l1_lower_bound_qubit",
    "l1_lower_bound_qudit",
    "minimize_on_disk",
    "normalize_element",
    "re_bound_convex",
    "re_bound_dual",
    "re_bound_partial",
    "spectral_range",
    "tight_state",
    "witnessable",
]
