"""Exact divisor theory, cohomology and MMP on complete toric surfaces."""

__version__ = "0.1.0"
