"""Integer matrix index objects.

All combinatorial objects in this package are indexed by small matrices of
nonnegative integers with ``rows`` rows and ``cols`` columns.  Entries are
stored column-major, so the flat entry tuple coincides with the reading word
obtained by scanning columns left to right, each column top to bottom.  Lex
comparisons of equally shaped matrices are plain tuple comparisons of that
reading word (columns are compared top to bottom, matching the column order
used throughout).
"""

from __future__ import annotations

from functools import lru_cache


class IntMatrix:
    """An immutable matrix of nonnegative integers, stored column-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(int(e) for e in entries)
        if rows < 1:
            raise ValueError("rows must be >= 1")
        if cols < 0:
            raise ValueError("cols must be >= 0")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        if any(e < 0 for e in entries):
            raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_columns(cls, rows, columns):
        """Build from an iterable of column tuples, each of length ``rows``."""
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError(f"column {c} does not have {rows} entries")
        flat = tuple(e for c in columns for e in c)
        return cls(rows, len(columns), flat)

    @classmethod
    def from_rows(cls, row_lists):
        """Build from a list of rows (the usual matrix display)."""
        row_lists = [tuple(r) for r in row_lists]
        if not row_lists:
            raise ValueError("need at least one row")
        cols = len(row_lists[0])
        if any(len(r) != cols for r in row_lists):
            raise ValueError("rows have unequal lengths")
        return cls.from_columns(len(row_lists), zip(*row_lists))

    def column(self, j):
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range")
        return self.entries[j * self.rows : (j + 1) * self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row_sums(self):
        """The degree vector: sum of the columns, one total per row."""
        sums = [0] * self.rows
        for j in range(self.cols):
            for i, e in enumerate(self.column(j)):
                sums[i] += e
        return tuple(sums)

    def column_sums(self):
        return tuple(sum(self.column(j)) for j in range(self.cols))

    def total(self):
        return sum(self.entries)

    def concat(self, other):
        if other.rows != self.rows:
            raise ValueError("row counts differ")
        return IntMatrix(self.rows, self.cols + other.cols, self.entries + other.entries)

    def take_columns(self, indices):
        return IntMatrix.from_columns(self.rows, [self.column(j) for j in indices])

    def drop_trailing_zero_columns(self):
        k = self.cols
        while k > 0 and all(e == 0 for e in self.column(k - 1)):
            k -= 1
        if k == self.cols:
            return self
        return IntMatrix(self.rows, k, self.entries[: k * self.rows])

    def reading_word(self):
        return self.entries

    def to_json_dict(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [list(self.column(j)) for j in range(self.cols)],
        }

    @classmethod
    def from_json_dict(cls, data):
        return cls.from_columns(data["rows"], data["entries"])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        rows = [
            " ".join(str(self.entries[j * self.rows + i]) for j in range(self.cols))
            for i in range(self.rows)
        ]
        return "IntMatrix[" + "; ".join(rows) + "]"

    def sort_key(self):
        """Deterministic ordering key for sets of matrices."""
        return (self.rows, self.cols, self.entries)


class RMatrix:
    """A matrix whose column sums are all divisible by ``r``.

    The last column must be nonzero; interior zero columns are allowed (they
    arise in the pivot-polynomial recursion).
    """

    __slots__ = ("base", "r")

    def __init__(self, base, r):
        if r < 1:
            raise ValueError("r must be >= 1")
        for j in range(base.cols):
            if sum(base.column(j)) % r != 0:
                raise ValueError(f"column {j} sum not divisible by {r}")
        if base.cols > 0 and all(e == 0 for e in base.column(base.cols - 1)):
            raise ValueError("last column must be nonzero")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")

    @classmethod
    def from_rows(cls, row_lists, r):
        return cls(IntMatrix.from_rows(row_lists), r)

    @classmethod
    def from_columns(cls, rows, columns, r):
        return cls(IntMatrix.from_columns(rows, columns), r)

    @property
    def length(self):
        return self.base.cols

    def is_composition(self):
        return all(s > 0 for s in self.base.column_sums())

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.base == other.base and self.r == other.r

    def __hash__(self):
        return hash((self.base, self.r))

    def __repr__(self):
        return f"RMatrix(r={self.r}, {self.base!r})"


class RComposition(RMatrix):
    """An RMatrix with no vanishing column sum."""

    __slots__ = ()

    def __init__(self, base, r):
        super().__init__(base, r)
        if not all(s > 0 for s in base.column_sums()):
            raise ValueError("composition matrices may not have zero column sums")


class ColoredComposition:
    """A matrix whose reading word has no run of ``rows`` consecutive zeros."""

    __slots__ = ("base",)

    def __init__(self, base):
        word = base.reading_word()
        run = 0
        for e in word:
            run = run + 1 if e == 0 else 0
            if run >= base.rows:
                raise ValueError(
                    f"reading word contains {base.rows} consecutive zeros"
                )
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("ColoredComposition is immutable")

    @classmethod
    def from_rows(cls, row_lists):
        return cls(IntMatrix.from_rows(row_lists))

    @property
    def length(self):
        return self.base.cols

    def __eq__(self, other):
        return isinstance(other, ColoredComposition) and self.base == other.base

    def __hash__(self):
        return hash(("colored", self.base))

    def __repr__(self):
        return f"ColoredComposition({self.base!r})"


def r_size(matrix, r=None):
    """Total of all entries divided by r.  Accepts an RMatrix or a pair."""
    if isinstance(matrix, RMatrix):
        base, r = matrix.base, matrix.r
    else:
        base = matrix
        if r is None:
            raise ValueError("r required when passing a bare IntMatrix")
    total = base.total()
    if total % r != 0:
        raise ValueError(f"entry total {total} not divisible by {r}")
    return total // r


def has_dominant_prefix(matrix, r=None):
    """True when some prefix of j columns has r-size at least j.

    These are exactly the matrices indexing the pivot-polynomial family.
    """
    if isinstance(matrix, RMatrix):
        base, r = matrix.base, matrix.r
    else:
        base = matrix
        if r is None:
            raise ValueError("r required when passing a bare IntMatrix")
    running = 0
    for j in range(base.cols):
        running += sum(base.column(j))
        if running >= r * (j + 1):
            return True
    return False


def _check_unit_vector(v, r):
    v = tuple(int(e) for e in v)
    if any(e < 0 for e in v):
        raise ValueError("vector entries must be nonnegative")
    total = sum(v)
    if total == 0:
        raise ValueError("vector must be nonzero")
    if total % r != 0:
        raise ValueError(f"vector total {total} not divisible by {r}")
    return v, total // r


@lru_cache(maxsize=None)
def _unit_decomposition(v, r):
    v, size = _check_unit_vector(v, r)
    remaining = list(v)
    columns = []
    for _ in range(size):
        budget = r
        col = []
        for e in remaining:
            t = min(e, budget)
            col.append(t)
            budget -= t
        columns.append(tuple(col))
        remaining = [e - t for e, t in zip(remaining, col)]
    return IntMatrix.from_columns(len(v), columns)


def unit_decomposition(v, r):
    """The lex-largest split of ``v`` into columns of r-size one.

    Columns are filled greedily top to bottom, each taking as much of the
    remaining budget ``r`` as the leftover vector allows; the result is the
    lex maximum (on the reading word) among all weakly lex-decreasing
    decompositions into r-size-one columns summing to ``v``.
    """
    return _unit_decomposition(tuple(int(e) for e in v), r)


def leading_unit(v, r):
    """First column of ``unit_decomposition(v, r)``."""
    return unit_decomposition(v, r).column(0)


def unit_remainder(v, r):
    """``v`` minus its leading unit column; componentwise nonnegative."""
    lead = leading_unit(v, r)
    return tuple(e - t for e, t in zip(v, lead))


@lru_cache(maxsize=None)
def _merge_closure(v, r):
    start = unit_decomposition(v, r)
    seen = {start}
    frontier = [start]
    while frontier:
        mat = frontier.pop()
        for j in range(mat.cols - 1):
            merged_col = tuple(
                a + b for a, b in zip(mat.column(j), mat.column(j + 1))
            )
            cols = mat.columns()
            cols[j : j + 2] = [merged_col]
            new = IntMatrix.from_columns(mat.rows, cols)
            if new not in seen:
                seen.add(new)
                frontier.append(new)
    return tuple(sorted(seen, key=IntMatrix.sort_key))


def merge_closure(v, r):
    """Smallest set containing ``unit_decomposition(v, r)`` closed under
    replacing two adjacent columns by their sum.  Returned sorted."""
    return list(_merge_closure(tuple(int(e) for e in v), r))


def composition_closure(a):
    """All concatenations of one matrix from the merge closure of each column.

    ``a`` must be an RComposition.
    """
    if not isinstance(a, RMatrix):
        raise TypeError("composition_closure expects an RMatrix")
    if not a.is_composition():
        raise ValueError("matrix has a vanishing column sum")
    factors = [merge_closure(a.base.column(j), a.r) for j in range(a.length)]
    results = [IntMatrix(a.base.rows, 0, ())]
    for options in factors:
        results = [acc.concat(m) for acc in results for m in options]
    seen = sorted(set(results), key=IntMatrix.sort_key)
    return seen
