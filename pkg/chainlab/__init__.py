"""Spectral toolkit for chain graphs."""

__version__ = "0.1.0"
