"""Hodge-number calculus for blow-ups, projective bundles and products.

Grids of dimensions h^{p,q}, the formulas that transform them, de Rham and
Hochschild bookkeeping with degeneracy defects, the Bott formula, and a
toric oracle that checks the formulas on fans.
"""

from .constructors import blow_up, blow_up_pair, curve, point, product, projective_bundle, projective_space
from .dsl import evaluate, parse, print_diamond
from .errors import (
    ArgumentError,
    CodimensionError,
    HodgeError,
    HypothesisError,
    InconsistencyError,
    InvalidFanError,
    RangeError,
    UnsupportedError,
)
from .grid import GridPair, HodgeGrid, anti_diagonal, grid_from_json, grid_to_json, total_hodge, validate

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CodimensionError",
    "GridPair",
    "HodgeError",
    "HodgeGrid",
    "HypothesisError",
    "InconsistencyError",
    "InvalidFanError",
    "RangeError",
    "UnsupportedError",
    "anti_diagonal",
    "blow_up",
    "blow_up_pair",
    "curve",
    "evaluate",
    "grid_from_json",
    "grid_to_json",
    "parse",
    "point",
    "print_diamond",
    "product",
    "projective_bundle",
    "projective_space",
    "total_hodge",
    "validate",
]
