"""Relative-entropy and l1-norm coherence measures."""

from .measures import c_l1, c_l1_bloch, c_re, c_re_bloch, coherence

__all__ = ["c_l1", "c_l1_bloch", "c_re", "c_re_bloch", "coherence"]
