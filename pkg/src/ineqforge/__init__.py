"""Exact-arithmetic certificates for generalized Damascus inequalities."""

__version__ = "0.1.0"
