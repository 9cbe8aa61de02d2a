"""Exact checks of the quadratic representation relations of so(p,q)."""

__version__ = "0.1.0"
