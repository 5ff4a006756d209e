"""Frobenius liftings and splittings on affine charts over Z/p^2.

Polynomials are passed and returned as strings in named variables, for
example Chart(3, ["x^3", "y^3"], vars=["x", "y"]).xi_det() == "x^2*y^2".
"""

from ._core import (
    Chart,
    FrobliftError,
    InvalidRecord,
    NonIntegralChi,
    NotALifting,
    ParseError,
    Splitting,
    boundedness_bounds,
    chi_tangent,
    euler_c3,
    fedder_is_fsplit,
    ghost_map,
    hrr_chi,
    normalize,
    p1_invariant_scan,
    rigidity_screen,
    screen_table,
    witt_add,
    witt_mul,
)

__all__ = [
    "Chart",
    "FrobliftError",
    "InvalidRecord",
    "NonIntegralChi",
    "NotALifting",
    "ParseError",
    "Splitting",
    "boundedness_bounds",
    "chi_tangent",
    "euler_c3",
    "fedder_is_fsplit",
    "ghost_map",
    "hrr_chi",
    "normalize",
    "p1_invariant_scan",
    "rigidity_screen",
    "screen_table",
    "witt_add",
    "witt_mul",
]
