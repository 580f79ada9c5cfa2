"""Exact quasi-invariant polynomial engine for the groups G(r,n).

Builds the quasi-invariant monomial families in several sets of variables,
computes multigraded Hilbert series of the associated quotient spaces by
exact linear algebra, expands them in symmetric function bases, and checks
the lattice-path models that describe them.
"""

__version__ = "0.1.0"

from .matrices import (
    ColoredComposition,
    IntMatrix,
    RComposition,
    RMatrix,
    composition_closure,
    has_dominant_prefix,
    leading_unit,
    merge_closure,
    r_size,
    unit_decomposition,
    unit_remainder,
)
from .polyring import Monomial, Polynomial, lex_compare
from .families import (
    monomial_colored_quasisym,
    monomial_quasi_invariant,
    pivot_polynomial,
    verify_leading,
)

__all__ = [
    "ColoredComposition",
    "IntMatrix",
    "Monomial",
    "Polynomial",
    "RComposition",
    "RMatrix",
    "composition_closure",
    "has_dominant_prefix",
    "leading_unit",
    "lex_compare",
    "merge_closure",
    "monomial_colored_quasisym",
    "monomial_quasi_invariant",
    "pivot_polynomial",
    "r_size",
    "unit_decomposition",
    "unit_remainder",
    "verify_leading",
]
