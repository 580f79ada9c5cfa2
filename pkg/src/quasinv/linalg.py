"""Exact rank computation for the graded quotient dimensions.

Two backends compute the rank of an integer matrix given as sparse rows:

* an exact Gaussian elimination over the rationals (the reference path,
  used directly on small matrices and as a confirmation sample), and
* an accelerated path working modulo random primes above 2**30.  A modular
  rank is a lower bound on the rational rank, with equality failing only
  when the prime divides certain minors; the accelerated result is accepted
  only when two independent primes agree, and on small inputs the rational
  path must confirm it.

The modular path is a right-looking blocked elimination in float64.  Pivots
are found inside narrow column panels by a jitted kernel; each panel then
issues one trailing update computed as two BLAS products, exact because the
factor matrix is split into 15-bit halves and the inner dimension is capped
at the panel width (64 terms below 2**47 stay below 2**53).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ResourceLimitError

try:  # pragma: no cover - exercised implicitly
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

# verified primes just above 2**30
PRIMES = (
    1073741827, 1073741831, 1073741833, 1073741839,
    1073741843, 1073741857, 1073741891, 1073741909,
    1073741939, 1073741953, 1073741969, 1073741971,
    1073741987, 1073741993, 1073742037, 1073742053,
)

_SPLIT = 32768.0  # 2**15
_PANEL = 64


def _fmod_exact(t, p):
    """Floored t mod p, elementwise, exact for |t| < 2**53 when p > 2**30.

    The quotient is then below 2**23, where a float64 division error (at
    most half an ulp, 2**-31) is smaller than the minimal distance 1/p of a
    non-integer quotient to an integer, so floor never crosses a boundary.
    Much faster than np.mod.
    """
    return t - np.floor(t / p) * p


class RankOptions:
    """Knobs for the certified rank computation."""

    def __init__(
        self,
        max_cells=400_000_000,
        exact_confirm_cells=30_000,
        force_exact=False,
        seed=0,
    ):
        self.max_cells = max_cells
        self.exact_confirm_cells = exact_confirm_cells
        self.force_exact = force_exact
        self.seed = seed


DEFAULT_OPTIONS = RankOptions()


def _panel_python(a, r0, c0, c1, p):
    """Find pivots in columns [c0, c1); eliminate below inside the window.

    Factors are stored in place of the eliminated entries.  Returns the
    pivot column indices.  Vectorized fallback for the jitted kernel.
    """
    m, _ = a.shape
    ip = int(p)
    pcols = []
    k = 0
    for c in range(c0, c1):
        rows_below = a[r0 + k :, c]
        nz = np.nonzero(rows_below)[0]
        if not len(nz):
            continue
        pr = r0 + k
        sel = pr + int(nz[0])
        if sel != pr:
            a[[pr, sel]] = a[[sel, pr]]
        inv = float(pow(int(a[pr, c]), -1, ip))
        window = a[pr, c : c1]
        shifted = _fmod_exact(window * _SPLIT, p)
        col = a[pr + 1 :, c]
        hits = np.nonzero(col)[0]
        if len(hits):
            invh, invl = divmod(int(inv), int(_SPLIT))
            f = _fmod_exact(_fmod_exact(col[hits] * invh, p) * _SPLIT + col[hits] * invl, p)
            fh = np.floor(f / _SPLIT)
            fl = f - fh * _SPLIT
            block = a[pr + 1 :, c : c1]
            block[hits] = _fmod_exact(
                block[hits]
                - _fmod_exact(fh[:, None] * shifted[None, :] + fl[:, None] * window[None, :], p),
                p,
            )
            a[pr + 1 :, c][hits] = f  # stored factors
        pcols.append(c)
        k += 1
        if r0 + k == m:
            break
    return np.array(pcols, dtype=np.int64)


def _fix_pivot_rows_python(a, r0, pcols, c1, p):
    """Apply the within-panel eliminations to the pivot rows' trailing parts."""
    k = len(pcols)
    if k < 2 or c1 >= a.shape[1]:
        return
    for j in range(1, k):
        row = a[r0 + j, c1:]
        for i in range(j):
            f = a[r0 + j, pcols[i]]
            if f == 0.0:
                continue
            fh = np.floor(f / _SPLIT)
            fl = f - fh * _SPLIT
            other = a[r0 + i, c1:]
            shifted = _fmod_exact(other * _SPLIT, p)
            row = _fmod_exact(row - _fmod_exact(fh * shifted + fl * other, p), p)
        a[r0 + j, c1:] = row


if _HAVE_NUMBA:

    @numba.njit(nogil=True, cache=True)
    def _panel_numba(a, r0, c0, c1, p):  # pragma: no cover - jitted
        m, n = a.shape
        pcols = np.empty(c1 - c0, np.int64)
        shifted = np.empty(c1 - c0)
        k = 0
        ip = np.int64(p)
        for c in range(c0, c1):
            pr = r0 + k
            sel = -1
            for i in range(pr, m):
                if a[i, c] != 0.0:
                    sel = i
                    break
            if sel < 0:
                continue
            if sel != pr:
                for j in range(n):
                    t = a[pr, j]
                    a[pr, j] = a[sel, j]
                    a[sel, j] = t
            # modular inverse of the pivot by Fermat
            base = np.int64(a[pr, c]) % ip
            inv = np.int64(1)
            e = ip - 2
            while e > 0:
                if e & 1:
                    inv = (inv * base) % ip
                base = (base * base) % ip
                e >>= 1
            finv = float(inv)
            finvh = np.floor(finv / _SPLIT)
            finvl = finv - finvh * _SPLIT
            for j in range(c, c1):
                t = a[pr, j] * _SPLIT
                shifted[j - c0] = t - np.floor(t / p) * p
            for i in range(pr + 1, m):
                v = a[i, c]
                if v == 0.0:
                    continue
                t = v * finvh
                t = t - np.floor(t / p) * p
                f = t * _SPLIT + v * finvl
                f = f - np.floor(f / p) * p
                if f < 0.0:
                    f += p
                elif f >= p:
                    f -= p
                fh = np.floor(f / _SPLIT)
                fl = f - fh * _SPLIT
                for j in range(c + 1, c1):
                    pv = a[pr, j]
                    t = a[i, j] - fh * shifted[j - c0] - fl * pv
                    t = t - np.floor(t / p) * p
                    if t < 0.0:
                        t += p
                    elif t >= p:
                        t -= p
                    a[i, j] = t
                a[i, c] = f
            pcols[k] = c
            k += 1
            if r0 + k == m:
                break
        return pcols[:k]

    @numba.njit(nogil=True, cache=True)
    def _fix_pivot_rows_numba(a, r0, pcols, c1, p):  # pragma: no cover - jitted
        k = len(pcols)
        n = a.shape[1]
        if k < 2 or c1 >= n:
            return
        width = n - c1
        shifted = np.empty((k, width))
        for j in range(width):
            t = a[r0, c1 + j] * _SPLIT
            shifted[0, j] = t - np.floor(t / p) * p
        for j in range(1, k):
            for i in range(j):
                f = a[r0 + j, pcols[i]]
                if f == 0.0:
                    continue
                fh = np.floor(f / _SPLIT)
                fl = f - fh * _SPLIT
                for col in range(width):
                    t = (
                        a[r0 + j, c1 + col]
                        - fh * shifted[i, col]
                        - fl * a[r0 + i, c1 + col]
                    )
                    t = t - np.floor(t / p) * p
                    if t < 0.0:
                        t += p
                    elif t >= p:
                        t -= p
                    a[r0 + j, c1 + col] = t
            for col in range(width):
                t = a[r0 + j, c1 + col] * _SPLIT
                shifted[j, col] = t - np.floor(t / p) * p


def _panel(a, r0, c0, c1, p):
    if _HAVE_NUMBA:
        return _panel_numba(a, r0, c0, c1, p)
    return _panel_python(a, r0, c0, c1, p)


def _fix_pivot_rows(a, r0, pcols, c1, p):
    if _HAVE_NUMBA:
        _fix_pivot_rows_numba(a, r0, pcols, c1, p)
    else:
        _fix_pivot_rows_python(a, r0, pcols, c1, p)


def _trailing_update(a, r0, pcols, c1, p):
    """a[below, trailing] -= factors @ pivot_rows[trailing]  (mod p)."""
    m, n = a.shape
    k = len(pcols)
    below = m - (r0 + k)
    if below <= 0 or c1 >= n or k == 0:
        return
    factors = a[r0 + k :, pcols]
    if not factors.any():
        return
    pivot_rows = a[r0 : r0 + k, c1:]
    fh = np.floor(factors / _SPLIT)
    fl = factors - fh * _SPLIT
    # inner dimension <= 64 keeps both products exact in float64
    hi = fh @ pivot_rows
    lo = fl @ pivot_rows
    upd = _fmod_exact(_fmod_exact(hi, p) * _SPLIT + lo, p)
    a[r0 + k :, c1:] = _fmod_exact(a[r0 + k :, c1:] - upd, p)


def rank_dense_mod(a, p):
    """Rank over GF(p) of a float64 array with entries in [0, p); in place."""
    m, n = a.shape
    rank = 0
    c0 = 0
    while c0 < n and rank < m:
        c1 = min(c0 + _PANEL, n)
        pcols = _panel(a, rank, c0, c1, p)
        k = len(pcols)
        if k:
            _fix_pivot_rows(a, rank, pcols, c1, p)
            _trailing_update(a, rank, pcols, c1, p)
            rank += k
        c0 = c1
    return rank


def dense_from_sparse_rows(sparse_rows, ncols, p):
    """Expand (index array, value array or None) rows into float64 mod p."""
    a = np.zeros((len(sparse_rows), ncols))
    for i, (idx, vals) in enumerate(sparse_rows):
        if vals is None:
            a[i, np.asarray(idx)] = 1.0
        else:
            np.add.at(a[i], np.asarray(idx), np.asarray(vals, dtype=np.float64))
    return np.mod(a, p)  # handles arbitrary magnitudes and signs once


def rank_mod_prime(sparse_rows, ncols, p):
    """Rank over GF(p) of the matrix whose rows are (indices, values) pairs."""
    if not len(sparse_rows) or ncols == 0:
        return 0
    a = dense_from_sparse_rows(sparse_rows, ncols, float(p))
    return rank_dense_mod(a, float(p))


def rank_exact(sparse_rows, ncols):
    """Rank over the rationals by Gaussian elimination with exact fractions."""
    pivots = {}  # pivot column -> reduced row (dict col -> Fraction)
    rank = 0
    for idx, vals in sparse_rows:
        if vals is None:
            row = {int(j): Fraction(1) for j in idx}
        else:
            row = {}
            for j, v in zip(idx, vals):
                j = int(j)
                row[j] = row.get(j, Fraction(0)) + Fraction(int(v))
            row = {j: v for j, v in row.items() if v}
        while row:
            c = min(row)
            if c in pivots:
                factor = row[c]
                for j, v in pivots[c].items():
                    new = row.get(j, Fraction(0)) - factor * v
                    if new:
                        row[j] = new
                    else:
                        row.pop(j, None)
            else:
                lead = row[c]
                pivots[c] = {j: v / lead for j, v in row.items()}
                rank += 1
                break
    return rank


def rank_exact_dense(matrix):
    """Exact rank of a dense list-of-lists / array of integers."""
    rows = []
    for row in matrix:
        idx = [j for j, v in enumerate(row) if v]
        vals = [int(row[j]) for j in idx]
        rows.append((np.array(idx, dtype=np.int64), np.array(vals, dtype=np.int64)))
    ncols = len(matrix[0]) if len(matrix) else 0
    return rank_exact(rows, ncols)


def certified_rank(sparse_rows, ncols, options=None):
    """Rank with the two-prime agreement rule and exact confirmation.

    Raises ResourceLimitError when the dense working size would exceed the
    configured budget.
    """
    options = options or DEFAULT_OPTIONS
    nrows = len(sparse_rows)
    if nrows == 0 or ncols == 0:
        return 0
    cells = nrows * ncols
    if cells > options.max_cells:
        raise ResourceLimitError(
            f"matrix of {nrows} x {ncols} cells exceeds budget {options.max_cells}"
        )
    if options.force_exact:
        return rank_exact(sparse_rows, ncols)
    rng = np.random.default_rng((options.seed, nrows, ncols))
    chosen = rng.choice(len(PRIMES), size=4, replace=False)
    p1, p2, p3, _ = (PRIMES[int(i)] for i in chosen)
    r1 = rank_mod_prime(sparse_rows, ncols, p1)
    r2 = rank_mod_prime(sparse_rows, ncols, p2)
    if r1 != r2:
        # a prime hit a minor; take a third opinion and the exact answer
        r3 = rank_mod_prime(sparse_rows, ncols, p3)
        best = max(r1, r2, r3)
        if cells <= 4 * options.exact_confirm_cells:
            return rank_exact(sparse_rows, ncols)
        return best
    if cells <= options.exact_confirm_cells:
        exact = rank_exact(sparse_rows, ncols)
        if exact != r1:
            raise AssertionError(
                f"modular rank {r1} disagrees with exact rank {exact}"
            )
    return r1
