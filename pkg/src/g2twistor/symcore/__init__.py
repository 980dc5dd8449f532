"""Exact scalars, the formula parser and exact linear algebra."""

from .chart import Chart, Radical
from .errors import (
    ChartMismatch,
    DivisionByZero,
    ExpressionSyntaxError,
    FractionalExponentOnNonDistinguishedVariable,
    IllegalFractionalSubstitution,
    NotSymmetric,
    ShapeMismatch,
    SymcoreError,
    UnboundParameter,
    UnknownVariable,
)
from .linalg import (
    Affine,
    Inconsistent,
    Matrix,
    Unique,
    bareiss,
    exact_linear_solve,
    inverse,
    kernel_basis,
    rank,
    signature_of_symmetric,
    solve_with,
)
from .parser import parse_ast, parse_scalar
from .ratexpr import RatExpr, exact_root, to_fraction


def differentiate(e: RatExpr, v: str) -> RatExpr:
    return e.differentiate(v)


def substitute(e: RatExpr, assignment: dict, target: Chart | None = None) -> RatExpr:
    return e.substitute(assignment, target)


__all__ = [
    "Affine", "Chart", "ChartMismatch", "DivisionByZero", "ExpressionSyntaxError",
    "FractionalExponentOnNonDistinguishedVariable", "IllegalFractionalSubstitution",
    "Inconsistent", "Matrix", "NotSymmetric", "Radical", "RatExpr", "ShapeMismatch",
    "SymcoreError", "UnboundParameter", "Unique", "UnknownVariable", "bareiss",
    "differentiate", "exact_linear_solve", "exact_root", "inverse", "kernel_basis",
    "parse_ast", "parse_scalar", "rank", "signature_of_symmetric", "solve_with",
    "substitute", "to_fraction",
]
