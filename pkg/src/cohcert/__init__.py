"""Certified lower bounds on quantum coherence from prepare-and-measure statistics."""

from cohcert.__about__ import __version__

__all__ = ["__version__"]
