"""Exact arithmetic over prime fields: fields, monomial orders, polynomials."""

from .factor import univariate_factor
from .field import PrimeField, StructuralError
from .monomial import GREVLEX, LEX, MonomialOrder, block_order
from .parse import ParseError, parse_polynomial
from .polynomial import PolyRing, Polynomial, format_poly


def poly_arith(a, b, op, k=None):
    """Apply ``op`` in {"add", "mul", "pow"}; ``pow`` raises ``a`` to ``k``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** k
    raise ValueError(f"unknown op {op!r}")


def frobenius_power(a, n):
    """a ** (p ** n)."""
    return a.frobenius_power(n)


__all__ = [
    "GREVLEX",
    "LEX",
    "MonomialOrder",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "StructuralError",
    "block_order",
    "format_poly",
    "frobenius_power",
    "parse_polynomial",
    "poly_arith",
    "univariate_factor",
]
