"""Numerical laboratory for growth and nodal geometry of harmonic functions."""

__version__ = "0.1.0"

from . import geom, growth, hfun  # noqa: F401
