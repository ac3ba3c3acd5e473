"""Exact differential polynomials on the infinite prolongation."""

from .scalar import GaussScalar, I
from .poly import (
    ANY_DEGREE,
    INHOMOGENEOUS,
    DiffPoly,
    FTower,
    Monomial,
    Param,
    U,
    Uj,
    UjBar,
    Var,
    Z,
    ZBAR,
    conjugate,
    is_homogeneous,
    mono_key,
    mono_wd,
    partial,
    poly,
    var_name,
    weighted_degree,
    zero,
)
from .model import PotentialModel, reduce
from .syntax import (
    ExprError,
    ExprSyntaxError,
    UnknownIdentifier,
    from_json_obj,
    parse_expr,
    parse_model,
    render,
    to_json_obj,
)

__all__ = [
    "ANY_DEGREE",
    "INHOMOGENEOUS",
    "DiffPoly",
    "ExprError",
    "ExprSyntaxError",
    "FTower",
    "GaussScalar",
    "I",
    "Monomial",
    "Param",
    "PotentialModel",
    "U",
    "Uj",
    "UjBar",
    "UnknownIdentifier",
    "Var",
    "Z",
    "ZBAR",
    "conjugate",
    "from_json_obj",
    "is_homogeneous",
    "mono_key",
    "mono_wd",
    "parse_expr",
    "parse_model",
    "partial",
    "poly",
    "reduce",
    "render",
    "to_json_obj",
    "var_name",
    "weighted_degree",
    "zero",
]
