"""Diagonal asymptotics and positivity for quasi-rational power series.

The package expands F = P^(-beta) as a multivariate power series, locates
the dominant singularity of the diagonal sequence at a quadratic cone
point of P, and turns local geometry (signature, dual quadratic form)
into an asymptotic formula and an ultimate-positivity verdict that the
exact series engine can cross-check.
"""

from .polycore import (
    HAVE_GMPY2,
    ParseError,
    Polynomial,
    Rat,
    diagonal_restriction,
    evaluate,
    is_symmetric,
    normalize_constant,
    parse_polynomial,
    partial_derivative,
    scale_coordinates,
    to_rat,
    to_string,
)

__version__ = "0.1.0"

__all__ = [
    "HAVE_GMPY2",
    "ParseError",
    "Polynomial",
    "Rat",
    "diagonal_restriction",
    "evaluate",
    "is_symmetric",
    "normalize_constant",
    "parse_polynomial",
    "partial_derivative",
    "scale_coordinates",
    "to_rat",
    "to_string",
    "__version__",
]
