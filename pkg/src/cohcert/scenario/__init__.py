"""Prepare-and-measure simulation and the no-go reconstructions."""

from .nogo import bell_povm, nogo_fully_di, nogo_joint
from .simulator import exact_probability, run_session

__all__ = ["bell_povm", "nogo_fully_di", "nogo_joint", "exact_probability", "run_session"]
