"""Reciprocal-polynomial curves over F_{q^2}: genus, point counts, record checks."""

__version__ = "0.1.0"
