"""The three polynomial families attached to index matrices.

* ``monomial_quasi_invariant``: the monomial basis of diagonal quasi-invariant
  polynomials, one per composition matrix, summing the matrix over all ordered
  selections of grid columns.
* ``monomial_colored_quasisym``: the colored quasi-symmetric monomials, with
  chain conditions on the nonzero entries of the reading word (weak inside a
  column, strict across columns).
* ``pivot_polynomial``: for every matrix with a dominant prefix, an element of
  the quasi-invariant ideal whose leading monomial is exactly the matrix
  itself; built by a two-branch recursion that removes interior zero columns.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .matrices import (
    RMatrix,
    has_dominant_prefix,
    leading_unit,
    unit_remainder,
)
from .polyring import Monomial, Polynomial


def _column_selection_sum(matrix, n):
    """Sum of ``X^B`` over placements of the columns of ``matrix`` at strictly
    increasing grid columns.  Empty sum (zero) when the matrix is too long."""
    k = matrix.cols
    rows = matrix.rows
    if k > n:
        return Polynomial.zero(rows, n)
    cols = matrix.columns()
    terms = {}
    for placement in combinations(range(n), k):
        mono = Monomial.from_columns(rows, n, dict(zip(placement, cols)))
        terms[mono] = 1
    return Polynomial(rows, n, terms)


def monomial_quasi_invariant(a, n):
    """The quasi-invariant monomial polynomial of a composition matrix on
    ``n`` grid columns."""
    if not isinstance(a, RMatrix):
        raise TypeError("expected an RMatrix / RComposition")
    if not a.is_composition():
        raise ValueError("monomial quasi-invariants are indexed by composition matrices")
    if a.length > n:
        raise ValueError(f"matrix has {a.length} columns but only {n} are available")
    return _column_selection_sum(a.base, n)


def monomial_colored_quasisym(c, n):
    """The colored quasi-symmetric monomial polynomial on ``n`` grid columns.

    Indices attached to zero entries are collapsed: consecutive nonzero
    entries of the reading word are chained by <= inside a column and by <
    across a column boundary.  The result may be zero when the chain cannot
    fit inside ``n`` columns.
    """
    base = c.base
    rows = base.rows
    positions = []  # (column k, row i, exponent) in reading order
    for k in range(base.cols):
        col = base.column(k)
        for i, e in enumerate(col):
            if e:
                positions.append((k, i, e))
    if not positions:
        return Polynomial.constant(rows, n, 1)

    terms = {}

    def assign(idx, prev_col, prev_val, chosen):
        if idx == len(positions):
            exps = [0] * (rows * n)
            for (i, a, e) in chosen:
                exps[a * rows + i] += e
            mono = Monomial(rows, n, exps)
            terms[mono] = terms.get(mono, 0) + 1
            return
        k, i, e = positions[idx]
        if prev_val is None:
            start = 0
        elif k == prev_col:
            start = prev_val
        else:
            start = prev_val + 1
        for a in range(start, n):
            assign(idx + 1, k, a, chosen + [(i, a, e)])

    assign(0, None, None, [])
    return Polynomial(rows, n, terms)


def _closure_selection_sum(columns, rows, r, n):
    """Sum of quasi-invariant monomials over the composition closure.

    Closure members with more than ``n`` columns admit no column selection
    and are pruned instead of generated.
    """
    from .matrices import merge_closure

    factors = [merge_closure(col, r) for col in columns]
    terms = {}

    def emit(member_cols):
        k = len(member_cols)
        for placement in combinations(range(n), k):
            mono = Monomial.from_columns(rows, n, dict(zip(placement, member_cols)))
            terms[mono] = terms.get(mono, 0) + 1

    def walk(i, acc):
        slots_for_rest = len(factors) - i - 1
        if i == len(factors):
            emit(acc)
            return
        for member in factors[i]:
            if len(acc) + member.cols + slots_for_rest <= n:
                walk(i + 1, acc + member.columns())

    walk(0, [])
    return Polynomial(rows, n, terms)


@lru_cache(maxsize=None)
def _pivot(columns, rows, r, n):
    k = len(columns)
    if k == 0:
        raise ValueError("empty matrix reached in pivot recursion")
    zero_positions = [j for j in range(k) if sum(columns[j]) == 0]
    if not zero_positions:
        return _closure_selection_sum(columns, rows, r, n)
    t = zero_positions[-1]
    head = columns[:t]
    v = columns[t + 1]
    tail = columns[t + 2 :]
    first = _pivot(_drop_trailing(head + (v,) + tail), rows, r, n)
    lead = leading_unit(v, r)
    rem = unit_remainder(v, r)
    second_cols = _drop_trailing(head + (rem,) + tail)
    second = _pivot(second_cols, rows, r, n)
    shift = Monomial.from_columns(rows, n, {t: lead})
    return first - second * shift


def _drop_trailing(columns):
    k = len(columns)
    while k > 0 and sum(columns[k - 1]) == 0:
        k -= 1
    return columns[:k]


def pivot_polynomial(a, n):
    """The ideal element whose leading monomial is the given matrix.

    ``a`` must have a dominant prefix (some prefix of j columns with r-size
    at least j) and at most ``n`` columns.  For a composition matrix the
    result is the sum of quasi-invariant monomials over the composition
    closure; otherwise the rightmost zero column at position j is removed by
    the recursion

        P[B 0 V C] = P[B V C] - X_{j+1}^lead(V) * P[B rem(V) C].
    """
    if not isinstance(a, RMatrix):
        raise TypeError("expected an RMatrix")
    if not has_dominant_prefix(a):
        raise ValueError("matrix has no dominant prefix")
    if a.length > n:
        raise ValueError(f"matrix has {a.length} columns but only {n} are available")
    return _pivot(tuple(a.base.columns()), a.base.rows, a.r, n)


def verify_leading(a, n):
    """True when the pivot polynomial's leading monomial equals the matrix
    itself, embedded in the leftmost grid columns."""
    poly = pivot_polynomial(a, n)
    if poly.is_zero():
        return False
    return poly.leading_monomial() == Monomial.from_matrix(a.base, n)


def bracket_text(matrix, label="M"):
    """Bracket rendering of an index matrix, rows separated by semicolons."""
    rows = [
        " ".join(str(matrix.entries[j * matrix.rows + i]) for j in range(matrix.cols))
        for i in range(matrix.rows)
    ]
    return f"{label}[" + "; ".join(rows) + "]"
