"""Bifurcation analysis of partial difference equations on graphs."""

__version__ = "0.1.0"
