import json
from itertools import product

import pytest

from quasinv.matrices import (
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


def brute_force_unit_decomposition(v, r):
    """Independent oracle: lex-max among all weakly lex-decreasing splits of v
    into columns of r-size one, by exhaustive search."""
    v = tuple(v)
    size = sum(v) // r

    def unit_columns_at_most(bound):
        # all columns c with sum r, 0 <= c <= v componentwise, c <= bound lex
        out = []
        def fill(idx, remaining, acc):
            if idx == len(v):
                if remaining == 0:
                    out.append(tuple(acc))
                return
            for e in range(min(v[idx], remaining) + 1):
                fill(idx + 1, remaining - e, acc + [e])
        fill(0, r, [])
        return [c for c in out if c <= bound]

    best = []

    def search(remaining, acc, bound):
        if all(e == 0 for e in remaining):
            best.append(tuple(acc))
            return
        for c in unit_columns_at_most(bound):
            if all(e <= rem for e, rem in zip(c, remaining)):
                search(tuple(e - x for e, x in zip(remaining, c)), acc + [c], c)
        return

    search(v, [], tuple([r] * len(v)))
    assert best, f"no decomposition found for {v}"
    flats = [tuple(e for c in cols for e in c) for cols in best]
    winner = best[flats.index(max(flats))]
    return IntMatrix.from_columns(len(v), winner)


def small_unit_vectors(max_rows=3, max_entry=6, max_size=4, r_values=(1, 2, 3)):
    for r in r_values:
        for rows in range(1, max_rows + 1):
            for v in product(range(max_entry + 1), repeat=rows):
                total = sum(v)
                if total == 0 or total % r or total // r > max_size:
                    continue
                yield v, r


class TestIntMatrix:
    def test_construction_and_columns(self):
        m = IntMatrix.from_rows([[1, 3], [0, 1], [2, 0]])
        assert m.rows == 3 and m.cols == 2
        assert m.column(0) == (1, 0, 2)
        assert m.column(1) == (3, 1, 0)
        assert m.row_sums() == (4, 1, 2)
        assert m.column_sums() == (3, 4)

    def test_concat_is_length_additive_and_associative(self):
        a = IntMatrix.from_rows([[1], [2]])
        b = IntMatrix.from_rows([[0, 3], [1, 1]])
        c = IntMatrix.from_rows([[5], [0]])
        assert a.concat(b).cols == 3
        assert a.concat(b).concat(c) == a.concat(b.concat(c))

    def test_rejects_negative_entries(self):
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, -1]])

    def test_json_round_trip(self):
        m = IntMatrix.from_rows([[1, 3], [0, 1], [2, 0]])
        data = json.loads(json.dumps(m.to_json_dict()))
        assert data == {"rows": 3, "cols": 2, "entries": [[1, 0, 2], [3, 1, 0]]}
        assert IntMatrix.from_json_dict(data) == m

    def test_value_equality(self):
        a = IntMatrix.from_rows([[1, 2]])
        b = IntMatrix.from_rows([[1, 2]])
        assert a == b and hash(a) == hash(b)
        assert len({a, b}) == 1


class TestRMatrix:
    def test_column_sums_must_be_divisible(self):
        with pytest.raises(ValueError):
            RMatrix.from_rows([[1, 1], [0, 1]], r=2)

    def test_trailing_zero_column_rejected(self):
        with pytest.raises(ValueError):
            RMatrix.from_rows([[2, 0], [2, 0]], r=2)

    def test_interior_zero_column_allowed(self):
        m = RMatrix.from_rows([[0, 2, 0, 1], [0, 2, 0, 3]], r=2)
        assert m.length == 4
        assert not m.is_composition()

    def test_composition_rejects_zero_column(self):
        with pytest.raises(ValueError):
            RComposition.from_rows([[0, 2], [0, 2]], r=2)
        c = RComposition.from_rows([[2, 1], [2, 3]], r=2)
        assert c.is_composition()


class TestColoredComposition:
    def test_zero_run_rejected(self):
        # reading word 1,0,0,1 has two consecutive zeros with two rows
        with pytest.raises(ValueError):
            ColoredComposition.from_rows([[1, 0], [0, 1]])

    def test_valid_examples(self):
        ColoredComposition.from_rows([[0, 1], [1, 0]])
        ColoredComposition.from_rows([[1, 3], [0, 1], [2, 0]])
        # single row: every entry must be nonzero
        with pytest.raises(ValueError):
            ColoredComposition.from_rows([[1, 0, 2]])


class TestRSize:
    def test_single_column(self):
        v = RMatrix.from_rows([[2], [3], [4]], r=3)
        assert r_size(v) == 3

    def test_two_column_example(self):
        assert r_size(RMatrix.from_rows([[2, 1], [2, 3]], r=2)) == 4

    def test_unit_decomposition_has_unit_columns(self):
        a = unit_decomposition((2, 3, 4), 3)
        assert a.cols == 3
        assert all(sum(a.column(j)) == 3 for j in range(a.cols))
        assert r_size(a, 3) == 3


class TestDominantPrefix:
    def test_any_composition_is_dominant(self):
        for rows, r in [([[2, 1], [2, 3]], 2), ([[1, 1, 1]], 1), ([[3], [3]], 3)]:
            assert has_dominant_prefix(RComposition.from_rows(rows, r))

    def test_worked_example(self):
        a = RMatrix.from_rows([[0, 2, 0, 1], [0, 2, 0, 3]], r=2)
        assert has_dominant_prefix(a)

    def test_small_negative_case(self):
        a = RMatrix.from_rows([[0, 2]], r=2)
        assert not has_dominant_prefix(a)


class TestUnitDecomposition:
    def test_three_row_example(self):
        a = unit_decomposition((2, 3, 4), 3)
        assert a == IntMatrix.from_rows([[2, 0, 0], [1, 2, 0], [0, 1, 3]])

    def test_single_column_cases(self):
        assert unit_decomposition((3,), 3) == IntMatrix.from_rows([[3]])
        assert unit_decomposition((1, 1), 2) == IntMatrix.from_rows([[1], [1]])

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            unit_decomposition((0, 0), 2)
        with pytest.raises(ValueError):
            unit_decomposition((1, 2), 2)

    def test_greedy_matches_brute_force(self):
        checked = 0
        for v, r in small_unit_vectors():
            greedy = unit_decomposition(v, r)
            brute = brute_force_unit_decomposition(v, r)
            assert greedy == brute, f"v={v} r={r}: {greedy} vs {brute}"
            checked += 1
        assert checked > 200

    def test_columns_weakly_decreasing_and_sum_back(self):
        for v, r in small_unit_vectors():
            a = unit_decomposition(v, r)
            cols = a.columns()
            assert all(cols[j] >= cols[j + 1] for j in range(len(cols) - 1))
            assert all(sum(c) == r for c in cols)
            assert a.row_sums() == tuple(v)


class TestLeadingUnit:
    def test_three_row_example(self):
        assert leading_unit((2, 3, 4), 3) == (2, 1, 0)
        assert unit_remainder((2, 3, 4), 3) == (0, 2, 4)

    def test_unit_size_vector(self):
        assert leading_unit((1, 1), 2) == (1, 1)
        assert unit_remainder((1, 1), 2) == (0, 0)

    def test_zero_top_entry(self):
        assert leading_unit((0, 4), 2) == (0, 2)
        assert unit_remainder((0, 4), 2) == (0, 2)


class TestMergeClosure:
    def test_three_row_example(self):
        got = set(merge_closure((2, 3, 4), 3))
        expected = {
            IntMatrix.from_rows([[2, 0, 0], [1, 2, 0], [0, 1, 3]]),
            IntMatrix.from_rows([[2, 0], [3, 0], [1, 3]]),
            IntMatrix.from_rows([[2, 0], [1, 2], [0, 4]]),
            IntMatrix.from_rows([[2], [3], [4]]),
        }
        assert got == expected

    def test_unit_vector_singleton(self):
        assert merge_closure((1, 1), 2) == [IntMatrix.from_rows([[1], [1]])]

    def test_two_two(self):
        got = set(merge_closure((2, 2), 2))
        expected = {
            IntMatrix.from_rows([[2, 0], [0, 2]]),
            IntMatrix.from_rows([[2], [2]]),
        }
        assert got == expected

    def test_contains_full_merge_and_start(self):
        for v, r in small_unit_vectors(max_rows=2, max_entry=4, max_size=3):
            closure = merge_closure(v, r)
            assert IntMatrix.from_columns(len(v), [v]) in closure
            assert unit_decomposition(v, r) in closure


class TestCompositionClosure:
    def test_single_column(self):
        a = RComposition.from_rows([[2], [3], [4]], r=3)
        assert composition_closure(a) == merge_closure((2, 3, 4), 3)

    def test_worked_two_column_example(self):
        a = RComposition.from_rows([[2, 1], [2, 3]], r=2)
        got = set(composition_closure(a))
        expected = {
            IntMatrix.from_rows([[2, 1], [2, 3]]),
            IntMatrix.from_rows([[2, 1, 0], [2, 1, 2]]),
            IntMatrix.from_rows([[2, 0, 1], [0, 2, 3]]),
            IntMatrix.from_rows([[2, 0, 1, 0], [0, 2, 1, 2]]),
        }
        assert got == expected

    def test_size_is_product_of_factor_sizes(self):
        a = RComposition.from_rows([[2, 1], [2, 3]], r=2)
        sizes = [len(merge_closure(a.base.column(j), 2)) for j in range(2)]
        assert len(composition_closure(a)) == sizes[0] * sizes[1]
        b = RComposition.from_rows([[2, 2], [2, 2]], r=2)
        sizes = [len(merge_closure(b.base.column(j), 2)) for j in range(2)]
        assert len(composition_closure(b)) <= sizes[0] * sizes[1]


class TestDominantPrefixPreservation:
    def test_zero_removal_branches_stay_dominant(self):
        # for every dominant matrix factoring as B 0 V C (rightmost zero),
        # both recursion branches are dominant again
        from itertools import product as iproduct

        r, rows = 2, 2
        cols_pool = [c for c in iproduct(range(3), repeat=rows) if sum(c) % r == 0]
        checked = 0
        for k in (2, 3, 4):
            for cols in iproduct(cols_pool, repeat=k):
                if sum(cols[-1]) == 0:
                    continue
                zero_positions = [j for j in range(k) if sum(cols[j]) == 0]
                if not zero_positions:
                    continue
                m = IntMatrix.from_columns(rows, cols)
                if not has_dominant_prefix(m, r):
                    continue
                t = zero_positions[-1]
                head, v, tail = cols[:t], cols[t + 1], cols[t + 2 :]
                first = head + (v,) + tail
                rem = unit_remainder(v, r)
                second = head + (rem,) + tail
                while second and sum(second[-1]) == 0:
                    second = second[:-1]
                assert has_dominant_prefix(IntMatrix.from_columns(rows, first), r)
                assert second, "second branch emptied for a dominant matrix"
                assert has_dominant_prefix(IntMatrix.from_columns(rows, second), r)
                checked += 1
        assert checked > 50
