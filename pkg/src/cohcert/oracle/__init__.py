"""Brute-force ground truth for the bounding modules."""

from cohcert.oracle.search import oracle_min_coherence, oracle_witness

__all__ = ["oracle_min_coherence", "oracle_witness"]
