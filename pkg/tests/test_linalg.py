import random

import numpy as np
import pytest

from quasinv.errors import ResourceLimitError
from quasinv.linalg import (
    PRIMES,
    RankOptions,
    certified_rank,
    rank_exact,
    rank_exact_dense,
    rank_mod_prime,
)


def to_sparse(matrix):
    rows = []
    for row in matrix:
        idx = [j for j, v in enumerate(row) if v]
        vals = [int(row[j]) for j in idx]
        rows.append((np.array(idx, dtype=np.int64), np.array(vals, dtype=np.int64)))
    return rows


def numpy_reference_rank(matrix):
    if not len(matrix):
        return 0
    return int(np.linalg.matrix_rank(np.array(matrix, dtype=float), tol=1e-9))


class TestExactRank:
    def test_known_small(self):
        assert rank_exact_dense([[1, 2], [2, 4]]) == 1
        assert rank_exact_dense([[1, 0], [0, 1]]) == 2
        assert rank_exact_dense([[0, 0], [0, 0]]) == 0
        assert rank_exact_dense([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2

    def test_random_against_numpy(self):
        rng = random.Random(4)
        for _ in range(40):
            m = rng.randint(1, 8)
            n = rng.randint(1, 8)
            mat = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
            assert rank_exact_dense(mat) == numpy_reference_rank(mat)


class TestModularRank:
    def test_matches_exact_on_random(self):
        rng = random.Random(9)
        for _ in range(40):
            m = rng.randint(1, 12)
            n = rng.randint(1, 12)
            mat = [[rng.randint(0, 4) for _ in range(n)] for _ in range(m)]
            sparse = to_sparse(mat)
            want = rank_exact(sparse, n)
            for p in PRIMES[:2]:
                assert rank_mod_prime(sparse, n, float(p)) == want

    def test_wide_and_tall_rectangles(self):
        rng = random.Random(13)
        for m, n in [(100, 30), (30, 100), (100, 70), (3, 200), (200, 3)]:
            mat = [[rng.randint(0, 2) for _ in range(n)] for _ in range(m)]
            sparse = to_sparse(mat)
            want = rank_exact(sparse, n)
            assert rank_mod_prime(sparse, n, PRIMES[0]) == want

    def test_rank_deficient_with_many_panels(self):
        # 200 columns spans several 64-wide panels; duplicate rows force
        # pivotless columns inside panels
        rng = random.Random(5)
        base = [[rng.randint(0, 3) for _ in range(200)] for _ in range(40)]
        mat = base + base + [[0] * 200] * 10 + base[:20]
        rng.shuffle(mat)
        sparse = to_sparse(mat)
        want = rank_exact(sparse, 200)
        for p in PRIMES[:3]:
            assert rank_mod_prime(sparse, 200, p) == want

    def test_larger_structured_matrix(self):
        # Vandermonde-ish with known full rank
        n = 60
        mat = [[pow(i + 1, j, 997) for j in range(n)] for i in range(n)]
        sparse = to_sparse(mat)
        assert rank_mod_prime(sparse, n, float(PRIMES[1])) == n

    def test_ones_only_rows(self):
        rows = [
            (np.array([0, 2], dtype=np.int64), None),
            (np.array([1], dtype=np.int64), None),
            (np.array([0, 1, 2], dtype=np.int64), None),
        ]
        assert rank_mod_prime(rows, 3, float(PRIMES[0])) == 2
        assert rank_exact(rows, 3) == 2


class TestCertifiedRank:
    def test_agrees_with_exact(self):
        rng = random.Random(21)
        for _ in range(25):
            m = rng.randint(1, 15)
            n = rng.randint(1, 10)
            mat = [[rng.randint(-2, 4) for _ in range(n)] for _ in range(m)]
            sparse = to_sparse(mat)
            assert certified_rank(sparse, n) == rank_exact(sparse, n)

    def test_budget_enforced(self):
        rows = to_sparse([[1, 0], [0, 1]])
        with pytest.raises(ResourceLimitError):
            certified_rank(rows, 2, RankOptions(max_cells=3))

    def test_force_exact(self):
        rows = to_sparse([[2, 4], [1, 2]])
        assert certified_rank(rows, 2, RankOptions(force_exact=True)) == 1

    def test_empty(self):
        assert certified_rank([], 5) == 0
