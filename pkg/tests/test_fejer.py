"""Tests for composite Fejer factors and approximants.

The factor oracle integrates the classical closed-form Fejer kernel
F_N(t) = (sin((N+1)t/2) / sin(t/2))^2 / (N+1) against e^{-iht} over one
period, independently of the product formula used by the package.
"""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from aptk.errors import NonIntegralBasisError, SpanMismatchError
from aptk.fejer import approximant, approximation_error, factor_for, fejer_factors
from aptk.freq import Frequency, FrequencySet, integralize, natural_basis
from aptk.sums import ExponentialSum, decide_equivalence, sample_equivalent


def fejer_kernel_coefficient_oracle(h: int, order: int) -> float:
    """h-th Fourier coefficient of the order-N Fejer kernel by quadrature."""
    ts = np.linspace(1e-9, 2 * math.pi - 1e-9, 400001)
    kernel = (np.sin((order + 1) * ts / 2) / np.sin(ts / 2)) ** 2 / (order + 1)
    integrand = kernel * np.exp(-1j * h * ts)
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    return float(np.real(trapezoid(integrand, ts) / (2 * math.pi)))


def integral_basis_for(coords):
    info = natural_basis(FrequencySet.from_coords(coords))
    return info if info.is_integral else integralize(info)


def make_sum(coords, coefficients, tail=0.0):
    return ExponentialSum.make(coords, coefficients, tail)


class TestFactors:
    def test_constant_term_passes_whole(self):
        info = integral_basis_for([[0], [1]])
        scheme = fejer_factors(info, [3])
        assert scheme.factors[0] == 1

    @pytest.mark.parametrize(
        "h,order,expected",
        [(0, 5, Fraction(1)), (1, 1, Fraction(1, 2)), (2, 1, Fraction(0)), (1, 3, Fraction(3, 4))],
    )
    def test_matches_kernel_oracle(self, h, order, expected):
        info = integral_basis_for([[1]])
        scheme = fejer_factors(info, [order])
        p = factor_for(scheme, Frequency.of(h))
        assert p == expected
        assert float(p) == pytest.approx(fejer_kernel_coefficient_oracle(h, order), abs=1e-6)

    def test_outside_support_is_zero(self):
        info = integral_basis_for([[1]])
        scheme = fejer_factors(info, [1])
        assert factor_for(scheme, Frequency.of(2)) == 0

    def test_symmetry_in_sign(self):
        info = integral_basis_for([[1, 0], [0, 1]])
        scheme = fejer_factors(info, [4, 7])
        for h1 in range(-3, 4):
            for h2 in range(-3, 4):
                assert factor_for(scheme, Frequency.of(h1, h2)) == factor_for(
                    scheme, Frequency.of(-h1, -h2)
                )

    def test_requires_integral_basis(self):
        info = natural_basis(FrequencySet.from_coords([[2], [3]]))
        assert not info.is_integral
        with pytest.raises(NonIntegralBasisError):
            fejer_factors(info, [1])

    def test_non_integer_coordinates_get_zero(self):
        info = integral_basis_for([[2]])  # basis element (2), coordinate of (1) is 1/2
        scheme = fejer_factors(info, [5])
        assert factor_for(scheme, Frequency.of(1)) == 0

    def test_span_mismatch(self):
        info = integral_basis_for([[1, 0]])
        scheme = fejer_factors(info, [2])
        with pytest.raises(SpanMismatchError):
            factor_for(scheme, Frequency.of(0, 1))


class TestApproximant:
    def test_half_damping(self):
        f = make_sum([[1]], [(1, 0)])
        scheme = fejer_factors(integral_basis_for([[1]]), [1])
        g = approximant(f, scheme)
        assert g.coeffs[0].modulus == 0.5
        assert g.is_polynomial

    def test_zero_sum(self):
        f = make_sum([[1]], [(0, 0)])
        scheme = fejer_factors(integral_basis_for([[1]]), [1])
        g = approximant(f, scheme)
        assert g.coeffs[0].modulus == 0.0

    def test_tail_dropped(self):
        f = make_sum([[1]], [(1, 0)], tail=0.5)
        scheme = fejer_factors(integral_basis_for([[1]]), [4])
        assert approximant(f, scheme).tail_energy == 0.0

    def test_error_monotone_in_orders(self):
        rng = random.Random(6)
        for _ in range(15):
            n = rng.randint(2, 6)
            coords = set()
            while len(coords) < n:
                coords.add((rng.randint(-3, 3), rng.randint(-3, 3)))
            f = make_sum(
                sorted(coords),
                [(rng.uniform(0.2, 1.5), Fraction(rng.randrange(8), 8)) for _ in range(n)],
            )
            info = integral_basis_for(sorted(coords))
            errors = []
            for order in (1, 2, 4, 8, 16, 32):
                scheme = fejer_factors(info, [order] * info.size)
                errors.append(approximation_error(f, scheme))
            assert all(b <= a + 1e-15 for a, b in zip(errors, errors[1:]))
            assert errors[-1] < errors[0] or errors[0] == 0

    def test_error_formula(self):
        f = make_sum([[1]], [(1, 0)])
        scheme = fejer_factors(integral_basis_for([[1]]), [1])
        assert approximation_error(f, scheme) == pytest.approx(0.5, abs=1e-15)

    def test_error_vanishes_on_full_pass(self):
        f = make_sum([[0]], [(2, 0)])
        scheme = fejer_factors(integral_basis_for([[0], [1]]), [1])
        assert approximation_error(f, scheme) == 0.0

    def test_equivariance_with_equivalence(self):
        f = make_sum([[1, 0], [0, 1], [2, 1]], [(1, 0), (0.5, Fraction(1, 8)), (0.25, 0)])
        g = sample_equivalent(f, seed=19)
        info = integral_basis_for([[1, 0], [0, 1], [2, 1]])
        scheme = fejer_factors(info, [1, 1])
        fa, ga = approximant(f, scheme), approximant(g, scheme)
        assert decide_equivalence(fa, ga).is_equivalent

    def test_error_decreases_toward_zero(self):
        f = make_sum([[1], [2]], [(1, 0), (1, 0)])
        info = integral_basis_for([[1], [2]])
        errors = [
            approximation_error(f, fejer_factors(info, [order])) for order in range(1, 33)
        ]
        assert all(b <= a + 1e-15 for a, b in zip(errors, errors[1:]))
        assert errors[-1] < 0.15
