"""Exact q-series engine and identity checker for Rogers-Ramanujan modular equations."""

from .series import LaurentSeries, NonUnitLeading

__version__ = "0.1.0"

__all__ = ["LaurentSeries", "NonUnitLeading", "__version__"]
