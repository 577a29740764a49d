"""Exact computations on webs of quadrics in P^7 through a common plane."""

__version__ = "0.1.0"
