"""Hurwitz equivalence of Dehn twist factorizations in the genus-2 mapping class group."""

__version__ = "0.1.0"
