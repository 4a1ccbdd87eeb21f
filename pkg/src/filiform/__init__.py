"""Exact verification of degenerations to 9-dimensional filiform Lie algebras."""

__version__ = "0.1.0"
