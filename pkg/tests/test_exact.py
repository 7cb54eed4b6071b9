"""Tests for the exact matrix engine: HNF, kernels, lattice membership."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aptk import exact


def is_row_hnf(h):
    """Row-style HNF shape: positive pivots on strictly increasing columns,
    entries above each pivot in [0, pivot), zero rows at the bottom."""
    last_pivot = -1
    seen_zero_row = False
    for row in h:
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is None:
            seen_zero_row = True
            continue
        if seen_zero_row or col <= last_pivot or row[col] <= 0:
            return False
        last_pivot = col
    # above-pivot reduction
    pivots = []
    for i, row in enumerate(h):
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is not None:
            pivots.append((i, col))
    for i, col in pivots:
        for k in range(i):
            if not 0 <= h[k][col] < h[i][col]:
                return False
    return True


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda rows: st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


class TestHnf:
    def test_identity_fixed_point(self):
        h, u = exact.hnf(exact.identity(2))
        assert h == exact.identity(2)
        assert u == exact.identity(2)

    def test_column_vector(self):
        # hand row-reduction: (2,4) -> (2,0)
        h, u = exact.hnf([[2], [4]])
        assert h == [[2], [0]]
        assert exact.mat_mul(u, [[2], [4]]) == h

    def test_det_preserved_up_to_sign(self):
        m = [[1, 2], [3, 4]]  # det = -2 by hand
        h, u = exact.hnf(m)
        assert abs(exact.det(h)) == 2
        assert abs(exact.det(u)) == 1

    @settings(max_examples=150, deadline=None)
    @given(small_matrices)
    def test_transform_and_shape(self, m):
        h, u = exact.hnf(m)
        assert exact.mat_mul(u, m) == h
        assert abs(exact.det(u)) == 1
        assert is_row_hnf(h)


class TestLeftKernel:
    def test_column_vector(self):
        u = exact.left_kernel_basis([[1], [2]])
        assert len(u) == 1
        assert exact.mat_mul(u, [[1], [2]]) == [[0]]
        # up to unimodular row change: the row is +-(2,-1) since it is primitive
        assert sorted(abs(x) for x in u[0]) == [1, 2]

    def test_identity_trivial_kernel(self):
        assert exact.left_kernel_basis(exact.identity(3)) == []

    def test_zero_column(self):
        m = [[1, 0], [2, 0]]
        u = exact.left_kernel_basis(m)
        assert len(u) == 1
        assert exact.mat_vec(exact.transpose(m), u[0]) == [0, 0]

    def test_rational_entries(self):
        m = [[Fraction(1, 2)], [Fraction(3, 4)]]
        u = exact.left_kernel_basis(m)
        assert len(u) == 1
        assert u[0][0] * m[0][0] + u[0][1] * m[1][0] == 0

    @settings(max_examples=100, deadline=None)
    @given(small_matrices)
    def test_rank_count_and_annihilation(self, m):
        u = exact.left_kernel_basis(m)
        assert len(u) == len(m) - exact.rank(m)
        for row in u:
            assert all(x == 0 for x in exact.mat_vec(exact.transpose(m), row))

    @settings(max_examples=60, deadline=None)
    @given(small_matrices)
    def test_saturation(self, m):
        # every integer vector in the rational kernel is an integer
        # combination of the basis rows
        u = exact.left_kernel_basis(m)
        if not u:
            return
        cols = len(u[0])
        for cand in itertools.product((-2, -1, 0, 1, 2), repeat=cols):
            if all(x == 0 for x in exact.mat_vec(exact.transpose(m), list(cand))):
                assert exact.lattice_membership(exact.transpose(u), list(cand)) is not None


class TestLatticeMembership:
    def test_simple_solvable(self):
        assert exact.lattice_membership([[2]], [4]) == [2]

    def test_parity_obstruction(self):
        assert exact.lattice_membership([[2]], [3]) is None

    def test_two_by_two(self):
        u = [[1, 1], [0, 2]]
        k = exact.lattice_membership(u, [1, 2])
        assert k is not None
        assert exact.mat_vec(u, k) == [1, 2]

    @settings(max_examples=100, deadline=None)
    @given(small_matrices, st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4))
    def test_roundtrip_and_absent(self, u, k0):
        k0 = k0[: len(u[0])]
        z = exact.mat_vec(u, k0)
        k = exact.lattice_membership(u, z)
        assert k is not None
        assert exact.mat_vec(u, k) == z

    def test_absent_means_no_small_solution(self):
        # brute-force box check for a few known-infeasible systems
        cases = [([[2, 0], [0, 2]], [1, 0]), ([[2, 4]], [3]), ([[3], [6]], [1, 2])]
        for u, z in cases:
            assert exact.lattice_membership(u, z) is None
            cols = len(u[0])
            for cand in itertools.product(range(-6, 7), repeat=cols):
                assert exact.mat_vec(u, list(cand)) != z


class TestSolveRational:
    def test_identity(self):
        b = [Fraction(1, 3), Fraction(-2, 7)]
        assert exact.solve_rational(exact.identity(2), b) == b

    def test_consistent_column(self):
        x = exact.solve_rational([[1], [2]], [Fraction(1, 4), Fraction(1, 2)])
        assert x == [Fraction(1, 4)]

    def test_inconsistent(self):
        assert exact.solve_rational([[1], [2]], [Fraction(1, 4), 0]) is None

    @settings(max_examples=100, deadline=None)
    @given(small_matrices, st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=4))
    def test_roundtrip(self, a, x0):
        x0 = [Fraction(v, 3) for v in x0[: len(a[0])]]
        b = exact.mat_vec(a, x0)
        x = exact.solve_rational(a, b)
        assert x is not None
        assert exact.mat_vec(a, x) == b


class TestHelpers:
    def test_right_kernel(self):
        basis = exact.right_kernel_basis([[1, 2, 3]])
        assert len(basis) == 2
        for v in basis:
            assert sum(c * x for c, x in zip([1, 2, 3], v)) == 0

    def test_fraction_gcd(self):
        assert exact.fraction_gcd([Fraction(1, 2), Fraction(1, 3)]) == Fraction(1, 6)
        assert exact.fraction_gcd([Fraction(2, 3), Fraction(1)]) == Fraction(1, 3)
        assert exact.fraction_gcd([]) == 0
        assert exact.fraction_gcd([Fraction(4), Fraction(6)]) == 2

    def test_det(self):
        assert exact.det([[1, 2], [3, 4]]) == -2
        assert exact.det([[2]]) == 2
        with pytest.raises(ValueError):
            exact.det([[1, 2]])
