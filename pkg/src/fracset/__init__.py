"""Exact counting of ratio sets, gcd classes and related constructions."""

from fracset.setcore import GridPointSet, IntegerSet

__all__ = ["IntegerSet", "GridPointSet"]
__version__ = "0.1.0"
