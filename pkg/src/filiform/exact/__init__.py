"""Exact scalar arithmetic: rationals, sparse polynomials, rational functions."""

from fractions import Fraction as Rational

from .parse import ParseError, parse_expr, render
from .poly import Polynomial
from .ratfunc import ONE, ZERO, DivisionByZero, RationalFunction, SubstitutionPole, as_rf, rsum

__all__ = [
    "Rational",
    "Polynomial",
    "RationalFunction",
    "DivisionByZero",
    "SubstitutionPole",
    "ParseError",
    "parse_expr",
    "render",
    "rsum",
    "as_rf",
    "ZERO",
    "ONE",
]
