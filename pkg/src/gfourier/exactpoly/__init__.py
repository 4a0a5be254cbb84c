"""Exact symbolic layer: quasi-polynomials, root systems and operators."""

from .poly import QuasiPolynomial, GaussianMismatchError
from .roots import RootSystem, UnsupportedRootSystem
from . import operators

__all__ = ["QuasiPolynomial", "GaussianMismatchError", "RootSystem", "UnsupportedRootSystem", "operators"]
