"""Sparse exact polynomials on a grid of variables.

The variable grid has ``nrows`` sets of ``ncols`` variables ``x[i][j]``
(row i = which set, column j = position inside the set).  A monomial is the
exponent grid stored as a column-major flat tuple, so plain tuple comparison
realizes the monomial order used here: lex on the reading word that scans
column 1 top to bottom, then column 2, and so on.  Coefficients are Python
ints or Fractions; all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction

from .matrices import IntMatrix


class Monomial:
    """Exponent grid of shape (nrows, ncols), column-major flat storage."""

    __slots__ = ("nrows", "ncols", "exps")

    def __init__(self, nrows, ncols, exps):
        exps = tuple(int(e) for e in exps)
        if len(exps) != nrows * ncols:
            raise ValueError("exponent count does not match grid shape")
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "exps", exps)

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def one(cls, nrows, ncols):
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def variable(cls, nrows, ncols, i, j, power=1):
        exps = [0] * (nrows * ncols)
        exps[j * nrows + i] = power
        return cls(nrows, ncols, exps)

    @classmethod
    def from_matrix(cls, matrix, ncols):
        """Embed an index matrix in the leftmost columns of the full grid."""
        if matrix.cols > ncols:
            raise ValueError(f"matrix has {matrix.cols} columns, grid only {ncols}")
        pad = (0,) * (matrix.rows * (ncols - matrix.cols))
        return cls(matrix.rows, ncols, matrix.entries + pad)

    @classmethod
    def from_columns(cls, nrows, ncols, placed):
        """Place column vectors at given grid columns: ``placed`` maps j -> column."""
        exps = [0] * (nrows * ncols)
        for j, col in placed.items():
            exps[j * nrows : (j + 1) * nrows] = [int(e) for e in col]
        return cls(nrows, ncols, exps)

    def exponent(self, i, j):
        return self.exps[j * self.nrows + i]

    def degree_vector(self):
        d = [0] * self.nrows
        for idx, e in enumerate(self.exps):
            d[idx % self.nrows] += e
        return tuple(d)

    def total_degree(self):
        return sum(self.exps)

    def __mul__(self, other):
        self._check_shape(other)
        return Monomial(
            self.nrows, self.ncols, tuple(a + b for a, b in zip(self.exps, other.exps))
        )

    def divides(self, other):
        self._check_shape(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def _check_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("monomials live on different grids")

    def to_matrix(self):
        return IntMatrix(self.nrows, self.ncols, self.exps)

    def __eq__(self, other):
        return (
            isinstance(other, Monomial)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.exps))

    def __repr__(self):
        return f"Monomial({render_monomial(self)})"


def lex_compare(a, b):
    """-1, 0 or 1 comparing the column-major reading words lexicographically."""
    a._check_shape(b)
    if a.exps == b.exps:
        return 0
    return 1 if a.exps > b.exps else -1


def render_monomial(mono, names=None):
    """Readable form like ``x[1][2]^2*x[2][2]``; 1-based indices."""
    parts = []
    for j in range(mono.ncols):
        for i in range(mono.nrows):
            e = mono.exponent(i, j)
            if e == 0:
                continue
            if names is not None and i < len(names):
                var = f"{names[i]}{j + 1}"
            else:
                var = f"x[{i + 1}][{j + 1}]"
            parts.append(var if e == 1 else f"{var}^{e}")
    return "*".join(parts) if parts else "1"


class Polynomial:
    """Finite sum of monomials with nonzero exact coefficients."""

    __slots__ = ("nrows", "ncols", "terms")

    def __init__(self, nrows, ncols, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            if mono.nrows != nrows or mono.ncols != ncols:
                raise ValueError("term grid shape mismatch")
            if coeff:
                clean[mono] = coeff
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def from_monomial(cls, mono, coeff=1):
        return cls(mono.nrows, mono.ncols, {mono: coeff})

    @classmethod
    def constant(cls, nrows, ncols, value):
        if not value:
            return cls.zero(nrows, ncols)
        return cls(nrows, ncols, {Monomial.one(nrows, ncols): value})

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono):
        return self.terms.get(mono, 0)

    def sorted_terms(self):
        """Terms in decreasing monomial order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: t[0].exps, reverse=True)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = terms.get(mono, 0) + coeff
            if new:
                terms[mono] = new
            else:
                terms.pop(mono, None)
        return Polynomial(self.nrows, self.ncols, terms)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial(
            self.nrows, self.ncols, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.nrows, self.ncols)
            return Polynomial(
                self.nrows, self.ncols, {m: c * other for m, c in self.terms.items()}
            )
        if isinstance(other, Monomial):
            return Polynomial(
                self.nrows, self.ncols, {m * other: c for m, c in self.terms.items()}
            )
        if isinstance(other, Polynomial):
            terms = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1 * m2
                    new = terms.get(m, 0) + c1 * c2
                    if new:
                        terms[m] = new
                    else:
                        terms.pop(m, None)
            return Polynomial(self.nrows, self.ncols, terms)
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nrows != self.nrows or other.ncols != self.ncols:
                raise ValueError("polynomials live on different grids")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nrows, self.ncols, other)
        raise TypeError(f"cannot combine Polynomial with {type(other)!r}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nrows, self.ncols, other)
        return (
            isinstance(other, Polynomial)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, frozenset(self.terms.items())))

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda m: m.exps)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def degree_vector(self):
        """Common degree vector of all terms; None for the zero polynomial.

        Raises if the polynomial is not multihomogeneous.
        """
        if not self.terms:
            return None
        it = iter(self.terms)
        d = next(it).degree_vector()
        for mono in it:
            if mono.degree_vector() != d:
                raise ValueError("polynomial is not multihomogeneous")
        return d

    def is_multihomogeneous(self):
        try:
            self.degree_vector()
        except ValueError:
            return False
        return True

    def scale_rows(self, factors):
        """Substitute x[i][j] -> factors[i] * x[i][j] with exact scalars.

        For a multihomogeneous polynomial of degree vector d this returns
        the original polynomial times ``prod(factors[i] ** d[i])``.
        """
        if len(factors) != self.nrows:
            raise ValueError("need one factor per variable row")
        factors = [Fraction(f) if not isinstance(f, int) else f for f in factors]
        terms = {}
        for mono, coeff in self.terms.items():
            scale = 1
            for i, d in enumerate(mono.degree_vector()):
                scale *= factors[i] ** d
            new = coeff * scale
            if new:
                terms[mono] = new
        return Polynomial(self.nrows, self.ncols, terms)

    def drop_first_column_shift(self):
        """Reinterpret a polynomial in columns 2..n as one in columns 1..n-1."""
        terms = {}
        for mono, coeff in self.terms.items():
            if any(mono.exponent(i, 0) for i in range(self.nrows)):
                raise ValueError("polynomial involves the first variable column")
            terms[Monomial(self.nrows, self.ncols - 1, mono.exps[self.nrows :])] = coeff
        return Polynomial(self.nrows, self.ncols - 1, terms)

    def prepend_zero_column(self):
        """Reinterpret a polynomial in n columns as one in columns 2..n+1."""
        pad = (0,) * self.nrows
        terms = {
            Monomial(self.nrows, self.ncols + 1, pad + mono.exps): coeff
            for mono, coeff in self.terms.items()
        }
        return Polynomial(self.nrows, self.ncols + 1, terms)

    def to_text(self, names=None):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            body = render_monomial(mono, names)
            if body == "1":
                piece = str(coeff)
            elif coeff == 1:
                piece = body
            elif coeff == -1:
                piece = f"-{body}"
            else:
                piece = f"{coeff}*{body}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def to_json_list(self):
        return [
            {"exponents": mono.to_matrix().to_json_dict(), "coeff": str(coeff)}
            for mono, coeff in self.sorted_terms()
        ]

    def __repr__(self):
        return f"Polynomial({self.to_text()})"
