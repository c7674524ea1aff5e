from __future__ import annotations

from fractions import Fraction

import pytest

from totalpos import (
    ExactMatrix,
    MinorQuery,
    Polynomial,
    ScanBudgetError,
    binomial,
    binomial_block_matrix,
    block_determinants,
    build_three_section,
    coefficient_matrix,
    family_polys,
    general_position,
    matmul,
    minor,
    positive_minor_scan,
    sign_factorization_check,
    sign_factorization_matrices,
    standard_weights,
    verify_network_equals_block_matrix,
    weight_matrix,
)

# Expanded coefficient rows for the three smallest families, frozen by hand.
COEFFS_M2 = [
    [1, 0],
    [-1, 1],
    [0, 1],
]
COEFFS_M4 = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [1, -2, 1, 0],
    [-1, 3, -3, 1],
    [0, 0, -1, 1],
    [0, 0, 0, 1],
]
COEFFS_M6 = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [-1, 3, -3, 1, 0, 0],
    [1, -4, 6, -4, 1, 0],
    [-1, 5, -10, 10, -5, 1],
    [0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, -1, 1],
    [0, 0, 0, 0, 0, 1],
]


class TestFamilyPolys:
    def test_m2_family(self):
        polys = family_polys(2)
        assert [p.coeffs for p in polys] == [(1,), (-1, 1), (0, 1)]

    def test_m4_family(self):
        polys = family_polys(4)
        assert polys[0] == Polynomial.make([1])
        assert polys[1] == Polynomial.monomial(1)
        assert polys[2] == Polynomial.linear_power(1, 2)
        assert polys[3] == Polynomial.linear_power(1, 3)
        assert polys[4] == Polynomial.monomial(2) * Polynomial.linear_power(1, 1)
        assert polys[5] == Polynomial.monomial(3)

    def test_m6_mixed_block_starts_cubed(self):
        polys = family_polys(6)
        assert polys[6] == Polynomial.monomial(3) * Polynomial.linear_power(1, 2)

    def test_family_size_and_degrees(self):
        for m in (2, 4, 6, 8, 10):
            polys = family_polys(m)
            assert len(polys) == 3 * (m // 2)
            assert all(p.degree <= m - 1 for p in polys)

    def test_requires_even_m(self):
        with pytest.raises(ValueError):
            family_polys(5)


class TestCoefficientMatrix:
    def test_printed_matrices(self):
        for m, expected in ((2, COEFFS_M2), (4, COEFFS_M4), (6, COEFFS_M6)):
            M = coefficient_matrix(family_polys(m), m)
            assert M.to_lists() == expected

    def test_width_pads_short_polynomials(self):
        M = coefficient_matrix([Polynomial.make([3])], 4)
        assert M.to_lists() == [[3, 0, 0, 0]]

    def test_width_must_cover_degrees(self):
        with pytest.raises(ValueError):
            coefficient_matrix([Polynomial.monomial(4)], 4)


class TestBinomialBlock:
    def test_entries_are_absolute_values_of_the_tail_rows(self):
        for m in (2, 4, 6, 8):
            t = m // 2
            M = coefficient_matrix(family_polys(m), m)
            B = binomial_block_matrix(m)
            for i in range(m):
                for j in range(m):
                    assert B.entries[i][j] == abs(M.entries[t + i][j])

    def test_m6_middle_row(self):
        B = binomial_block_matrix(6)
        assert list(B.entries[2]) == [1, 5, 10, 10, 5, 1]

    def test_closed_form_entries(self):
        for m in (2, 4, 6, 8, 10):
            t = m // 2
            B = binomial_block_matrix(m)
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    if i <= t:
                        assert B.entries[i - 1][j - 1] == binomial(t + i - 1, j - 1)
                    else:
                        assert B.entries[i - 1][j - 1] == binomial(2 * t - i, j - i)


class TestFactorization:
    def test_block_determinants_are_all_one(self):
        for m in (2, 4, 6, 8, 12, 16, 20, 24):
            assert block_determinants(m) == (1, 1, 1)

    def test_sign_factorization_reconstructs_the_coefficient_matrix(self):
        for m in (2, 4, 6, 8, 10, 12):
            S1, B, S2 = sign_factorization_matrices(m)
            product = matmul(matmul(S1, B), S2)
            assert product.to_lists() == coefficient_matrix(family_polys(m), m).to_lists()
            assert sign_factorization_check(m)

    def test_middle_factor_stacks_identity_over_the_block(self):
        m, t = 6, 3
        _, mid, _ = sign_factorization_matrices(m)
        assert mid.rows == 3 * t and mid.cols == m
        block = binomial_block_matrix(m)
        for i in range(t):
            assert list(mid.entries[i]) == [int(i == j) for j in range(m)]
        for i in range(m):
            assert mid.entries[t + i] == block.entries[i]

    def test_sign_matrices_are_diagonal_with_unit_entries(self):
        S1, _, S2 = sign_factorization_matrices(6)
        for S, n in ((S1, 9), (S2, 6)):
            assert S.rows == S.cols == n
            for i in range(n):
                for j in range(n):
                    if i == j:
                        assert abs(S.entries[i][j]) == 1
                    else:
                        assert S.entries[i][j] == 0


class TestNetworkIdentity:
    def test_block_matrix_is_the_network_weight_matrix(self):
        for m in (2, 4, 6, 8, 10, 12):
            assert verify_network_equals_block_matrix(m)
            net = build_three_section(standard_weights(m))
            assert weight_matrix(net).to_lists() == binomial_block_matrix(m).to_lists()


class TestGeneralPosition:
    def test_every_maximal_minor_is_nonzero_for_small_m(self):
        rep = general_position(2)
        assert rep.ok and rep.total_subsets == 3
        rep = general_position(4)
        assert rep.ok and rep.total_subsets == 15
        assert rep.min_abs_nonzero_det == 1

    def test_budget_guard(self):
        with pytest.raises(ScanBudgetError):
            general_position(20, exhaustive_limit=100)

    def test_sampled_mode(self):
        rep = general_position(12, mode="sampled", seed=11, sample_count=300)
        assert rep.ok
        assert rep.checked_subsets == 300
        assert rep.mode == "sampled"


class TestPositiveMinorScan:
    def test_minor_counts(self):
        for m, total in ((2, 3), (4, 15), (6, 84), (8, 495)):
            rep = positive_minor_scan(m)
            assert rep.ok
            assert rep.total_minors == total
            assert rep.violations == ()
            assert not rep.witnesses_attached

    def test_witnesses_cover_every_minor(self):
        for m in (2, 4, 6):
            rep = positive_minor_scan(m, with_witnesses=True)
            assert rep.ok
            assert rep.witnesses_attached
            assert rep.missing_witnesses == ()

    def test_example_minor_value(self):
        # One three-row minor of the m=4 block whose columns include the tail.
        B = binomial_block_matrix(4)
        assert minor(B, MinorQuery((2, 3, 4), (2, 3, 4))) == 3
        assert minor(B, MinorQuery((1, 2, 3, 4), (1, 2, 3, 4))) == 1

    def test_report_serializes(self):
        d = positive_minor_scan(2).to_json_dict()
        assert d["m"] == 2
        assert d["total_minors"] == 3
        assert d["violations"] == []
