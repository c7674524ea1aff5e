from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from totalpos import (
    ExactMatrix,
    MinorQuery,
    ScanBudgetError,
    coefficient_matrix,
    determinant,
    diagonal,
    family_polys,
    identity,
    is_totally_nonnegative,
    is_totally_positive,
    matmul,
    maximal_minor_scan,
    minor,
)


def cofactor_determinant(rows):
    """Independent oracle: Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        rest = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * cofactor_determinant(rest)
    return total


square_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.fractions(max_denominator=6), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


class TestExactMatrix:
    def test_rejects_ragged_rows(self):
        with pytest.raises(ValueError):
            ExactMatrix.from_rows([[1, 2], [3]])

    def test_entries_become_fractions(self):
        M = ExactMatrix.from_rows([[1, "1/2"], [Fraction(3), 0]])
        assert M.entries[0][1] == Fraction(1, 2)
        assert all(isinstance(x, Fraction) for row in M.entries for x in row)

    def test_shape(self):
        M = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert (M.rows, M.cols) == (2, 3)

    def test_submatrix_uses_zero_based_positions(self):
        M = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert M.submatrix((0,), (0, 2)).to_lists() == [[1, 3]]

    def test_identity_and_diagonal(self):
        assert identity(2).to_lists() == [[1, 0], [0, 1]]
        assert diagonal([1, Fraction(1, 2)]).to_lists() == [[1, 0], [0, Fraction(1, 2)]]

    def test_matmul_against_hand_product(self):
        A = ExactMatrix.from_rows([[1, 2], [3, 4]])
        B = ExactMatrix.from_rows([[0, 1], [1, 1]])
        assert matmul(A, B).to_lists() == [[2, 3], [4, 7]]

    def test_matmul_shape_mismatch(self):
        A = ExactMatrix.from_rows([[1, 2, 3]])
        with pytest.raises(ValueError):
            matmul(A, A)


class TestDeterminant:
    def test_examples(self):
        assert determinant(ExactMatrix.from_rows([[1, 2], [3, 4]])) == -2
        assert determinant(ExactMatrix.from_rows([[5]])) == 5
        assert determinant(identity(6)) == 1

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            determinant(ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))

    @settings(max_examples=60)
    @given(square_matrices)
    def test_matches_cofactor_expansion(self, rows):
        assert determinant(ExactMatrix.from_rows(rows)) == cofactor_determinant(rows)

    @settings(max_examples=40)
    @given(square_matrices, st.data())
    def test_multiplicative(self, rows_a, data):
        n = len(rows_a)
        rows_b = data.draw(
            st.lists(
                st.lists(st.fractions(max_denominator=6), min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            )
        )
        A, B = ExactMatrix.from_rows(rows_a), ExactMatrix.from_rows(rows_b)
        assert determinant(matmul(A, B)) == determinant(A) * determinant(B)


class TestMinor:
    def test_one_based_index_convention(self):
        M = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
        assert minor(M, MinorQuery((1,), (3,))) == 3
        assert minor(M, MinorQuery((1, 2), (1, 2))) == -3
        assert minor(M, MinorQuery((1, 2, 3), (1, 2, 3))) == -3

    def test_query_validation(self):
        with pytest.raises(ValueError):
            MinorQuery((2, 1), (1, 2))
        with pytest.raises(ValueError):
            MinorQuery((1, 1), (1, 2))
        with pytest.raises(ValueError):
            minor(ExactMatrix.from_rows([[1]]), MinorQuery((1,), (1, 2)))
        with pytest.raises(ValueError):
            minor(ExactMatrix.from_rows([[1]]), MinorQuery((1,), (2,)))


class TestPositivityVerdicts:
    def test_triangular_matrix_is_nonnegative_but_not_positive(self):
        M = ExactMatrix.from_rows([[1, 1], [0, 1]])
        assert is_totally_nonnegative(M).ok
        verdict = is_totally_positive(M)
        assert not verdict.ok
        assert verdict.witness.value == 0

    def test_positive_example(self):
        M = ExactMatrix.from_rows([[1, 1], [1, 2]])
        assert is_totally_positive(M).ok
        assert is_totally_nonnegative(M).ok

    def test_failure_witness_is_an_actual_minor(self):
        M = ExactMatrix.from_rows([[1, 2], [3, 4]])
        verdict = is_totally_nonnegative(M)
        assert not verdict.ok
        w = verdict.witness
        assert w.value < 0
        assert minor(M, w.query) == w.value

    def test_size_guard_limits_work(self):
        M = identity(30)
        with pytest.raises(ScanBudgetError):
            is_totally_nonnegative(M, size_guard=10)


class TestMaximalMinorScan:
    def test_small_exhaustive_scan(self):
        rep = maximal_minor_scan(ExactMatrix.from_rows([[1, 0], [0, 1], [1, 1]]))
        assert rep.ok
        assert (rep.total_subsets, rep.checked_subsets) == (3, 3)
        assert rep.min_abs_nonzero_det == 1
        assert rep.failures == ()

    def test_reports_lex_first_zero_subset(self):
        M = ExactMatrix.from_rows([[1, 1], [2, 2], [0, 1], [1, 0]])
        rep = maximal_minor_scan(M)
        assert not rep.ok
        assert rep.failures[0] == (1, 2)
        assert rep.checked_subsets == 6

    def test_fail_fast_stops_at_first_zero(self):
        M = ExactMatrix.from_rows([[1, 1], [2, 2], [0, 1], [1, 0]])
        rep = maximal_minor_scan(M, fail_fast=True)
        assert not rep.ok
        assert rep.failures == ((1, 2),)
        assert rep.checked_subsets == 1

    def test_direct_and_reduced_engines_agree(self):
        M = coefficient_matrix(family_polys(8), 8)
        fast = maximal_minor_scan(M)
        slow = maximal_minor_scan(M, _force_direct=True)
        assert fast.failures == slow.failures
        assert fast.min_abs_nonzero_det == slow.min_abs_nonzero_det
        assert fast.total_subsets == slow.total_subsets == 495

    def test_thread_count_does_not_change_results(self):
        M = coefficient_matrix(family_polys(8), 8)
        one = maximal_minor_scan(M)
        two = maximal_minor_scan(M, threads=2)
        assert one.failures == two.failures
        assert one.min_abs_nonzero_det == two.min_abs_nonzero_det

    def test_sampled_mode_is_seed_deterministic(self):
        M = coefficient_matrix(family_polys(8), 8)
        a = maximal_minor_scan(M, mode="sampled", seed=5, sample_count=100)
        b = maximal_minor_scan(M, mode="sampled", seed=5, sample_count=100, threads=2)
        assert a.mode == "sampled"
        assert a.checked_subsets == 100
        assert (a.seed, a.sample_count) == (5, 100)
        assert a.failures == b.failures
        assert a.min_abs_nonzero_det == b.min_abs_nonzero_det

    def test_mode_argument_validation(self):
        M = ExactMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
        with pytest.raises(ValueError):
            maximal_minor_scan(M, mode="sampled")
        with pytest.raises(ValueError):
            maximal_minor_scan(M, mode="exhaustive", seed=3)
        with pytest.raises(ValueError):
            maximal_minor_scan(M, mode="guess")

    def test_exhaustive_limit_guard(self):
        M = coefficient_matrix(family_polys(8), 8)
        with pytest.raises(ScanBudgetError):
            maximal_minor_scan(M, exhaustive_limit=100)

    def test_report_serializes_to_plain_json_types(self):
        rep = maximal_minor_scan(ExactMatrix.from_rows([[1, 0], [0, 1], [1, 1]]))
        d = rep.to_json_dict()
        assert d["total_subsets"] == 3
        assert d["failures"] == []
        assert d["min_abs_nonzero_det"] == "1"
        assert isinstance(d["elapsed_ms"], int)
