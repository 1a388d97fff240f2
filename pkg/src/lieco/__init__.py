"""Lie algebra cohomology, pseudo-extensions and coadjoint-orbit tools."""

from .algebra import LieAlgebra, make_algebra, validate_algebra
from .cohomology import AlgebraTwoCocycle, central_extension, h2, h2_decompose, iw_contraction, pseudo_extension
from .fileio import parse_algebra_file, serialize_algebra

__version__ = "0.1.0"

__all__ = [
    "AlgebraTwoCocycle",
    "LieAlgebra",
    "__version__",
    "central_extension",
    "h2",
    "h2_decompose",
    "iw_contraction",
    "make_algebra",
    "parse_algebra_file",
    "pseudo_extension",
    "serialize_algebra",
    "validate_algebra",
]
