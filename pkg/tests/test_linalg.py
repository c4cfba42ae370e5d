"""Exact matrix/vector ops and the Frobenius-based norm upper bounds."""

from __future__ import annotations

import random

import pytest

from gramcert.linalg import (
    dot,
    frobenius_norm_upper_bound,
    integer_grid,
    is_zero_matrix,
    l2_upper_bound,
    matrix_div,
    minus,
    mtm,
    mv_product,
    truncate_with_error,
)
from gramcert.oracles import naive_mm_product, transpose
from gramcert.rational import Q
from gramcert.sqrt import DEFAULT_SQRT_CONFIG

from helpers import rand_matrix, rand_vector, sq_norm

TOL = DEFAULT_SQRT_CONFIG.err_tolerance


class TestBasics:
    def test_minus(self):
        assert minus([Q(1), Q(2)], [Q(3), Q(5)]) == [Q(-2), Q(-3)]

    def test_minus_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            minus([Q(1)], [Q(1), Q(2)])

    def test_mv_product_rejects_width_mismatch(self):
        with pytest.raises(ValueError):
            mv_product([[Q(1), Q(2)]], [Q(1)])

    def test_dot_is_exact(self):
        assert dot([Q(1, 3), Q(1, 7)], [Q(3), Q(7)]) == Q(2)

    def test_integer_grid_rescales_exactly(self):
        M = [[Q(1, 3), Q(1, 6)], [Q(-1, 2), Q(2)]]
        den, grid = integer_grid(M)
        assert den == 6
        assert grid == [[2, 1], [-3, 12]]


class TestMtm:
    def test_single_row_example(self):
        assert mtm([[Q(1), Q(2)]]) == [[Q(1), Q(2)], [Q(2), Q(4)]]

    def test_matches_naive_transpose_product(self):
        rng = random.Random(101)
        for _ in range(200):
            rows = rng.randint(1, 8)
            cols = rng.randint(1, 8)
            M = rand_matrix(rng, rows, cols)
            assert mtm(M) == naive_mm_product(transpose(M), M)

    def test_exactly_symmetric_with_shared_entries(self):
        rng = random.Random(102)
        M = rand_matrix(rng, 5, 7)
        G = mtm(M)
        for i in range(7):
            for j in range(7):
                assert G[i][j] == G[j][i]


class TestNormBounds:
    def test_three_four_five(self):
        r = frobenius_norm_upper_bound([[Q(3), Q(4)]])
        assert Q(5) <= r <= Q(5) + Q(1, 10 ** 10)

    def test_l2_matches_frobenius_on_a_row(self):
        v = [Q(3), Q(4)]
        assert l2_upper_bound(v) == frobenius_norm_upper_bound([v])

    def test_frobenius_dominates_image_norms(self):
        # ||Mv||^2 <= bound^2 * ||v||^2, compared exactly on squares
        rng = random.Random(103)
        for _ in range(50):
            M = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
            bound = frobenius_norm_upper_bound(M)
            v = rand_vector(rng, len(M[0]))
            assert sq_norm(mv_product(M, v)) <= bound * bound * sq_norm(v)

    def test_cauchy_schwarz_exact_on_squares(self):
        rng = random.Random(104)
        for _ in range(100):
            n = rng.randint(1, 8)
            v = rand_vector(rng, n)
            u = rand_vector(rng, n)
            d = dot(v, u)
            assert d * d <= sq_norm(v) * sq_norm(u)

    def test_zero_vector(self):
        assert l2_upper_bound([Q(0), Q(0)]) == Q(0)


class TestMatrixDiv:
    def test_divides_exactly(self):
        assert matrix_div([[Q(1), Q(3)]], Q(2)) == [[Q(1, 2), Q(3, 2)]]

    def test_rejects_nonpositive_divisor(self):
        with pytest.raises(ValueError):
            matrix_div([[Q(1)]], Q(0))
        with pytest.raises(ValueError):
            matrix_div([[Q(1)]], Q(-2))


class TestTruncateWithError:
    def test_example(self):
        T, E = truncate_with_error([[Q(1, 3)]], 2)
        assert T == [[Q(33, 100)]]
        assert E == [[Q(1, 300)]]

    def test_decomposition_on_random_symmetric(self):
        rng = random.Random(105)
        for _ in range(50):
            n = rng.randint(1, 6)
            M = [[Q(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    x = Q(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6))
                    M[i][j] = x
                    M[j][i] = x
            T, E = truncate_with_error(M, 16)
            grid = Q(1, 10 ** 16)
            for i in range(n):
                for j in range(n):
                    assert T[i][j] + E[i][j] == M[i][j]
                    assert 0 <= E[i][j] < grid

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            truncate_with_error([[Q(1), Q(2)]], 16)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            truncate_with_error([[Q(1), Q(2)], [Q(3), Q(4)]], 16)


class TestIsZeroMatrix:
    def test_zero_and_nonzero(self):
        assert is_zero_matrix([[Q(0), Q(0)]])
        assert not is_zero_matrix([[Q(0), Q(1, 10 ** 30)]])
