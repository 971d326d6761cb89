"""Exact and numerical workbench for 2D conformal Laplace superintegrable systems."""

from .scalars import Gauss, I, MixedScalarError, parse_scalar
from .polys import Poly2
from .diffops import DiffOp2, InvarianceViolation, matrix_on_space
from .catalog import SYSTEM_IDS, get_system, list_systems, complete_params, build_h

__all__ = [
    "Gauss", "I", "MixedScalarError", "parse_scalar", "Poly2", "DiffOp2",
    "InvarianceViolation", "matrix_on_space", "SYSTEM_IDS", "get_system",
    "list_systems", "complete_params", "build_h",
]
__version__ = "0.1.0"
