"""Exact fractional colouring of small graphs with bounded degree."""

from .graph import Graph
from .lp import Rational

__version__ = "0.1.0"

__all__ = ["Graph", "Rational", "__version__"]
