"""Tests for translation-number search, density statistics, and the
compactness demonstration."""

import math
import random
from fractions import Fraction

import pytest

from aptk.besic import b2_distance_exact
from aptk.errors import (
    BudgetExhaustedError,
    DegenerateInputError,
    NotEquivalentFamilyError,
    NotEquivalentInputError,
)
from aptk.freq import AtomTable
from aptk.search import (
    dense_translate_sequence,
    enumerate_taus,
    extract_convergent_subsequence,
    find_tau,
    uniform_set_check,
)
from aptk.sums import ExponentialSum, decide_equivalence, deviation, sample_equivalent, translate

ATOMS1 = AtomTable(("u",), {"u": 1.0})
ATOMS2 = AtomTable(("u", "v"), {"u": 1.0, "v": math.sqrt(2)})


def make_sum(coords, coefficients, tail=0.0):
    return ExponentialSum.make(coords, coefficients, tail)


class TestFindTau:
    def test_quarter_turn_single_frequency(self):
        a = make_sum([[1]], [(1, 0)])
        b = make_sum([[1]], [(1, Fraction(1, 4))])
        cert = find_tau(a, b, ATOMS1, d=0.0, eps=1e-3)
        assert cert.tau > 0
        assert cert.deviation < 1e-3
        # tau sits at pi/2 modulo the 2 pi period
        assert min(abs(cert.tau - (math.pi / 2 + 2 * math.pi * k)) for k in range(10)) < 1e-3

    def test_self_translation_is_near_period(self):
        a = make_sum([[1]], [(1, 0)])
        cert = find_tau(a, a, ATOMS1, d=1.0, eps=1e-6)
        assert cert.tau > 1.0
        assert cert.deviation < 1e-6
        assert abs(cert.tau - 2 * math.pi) < 1e-6

    def test_two_atom_pair(self):
        a = make_sum([[1, 0], [0, 1]], [(1, 0), (1, 0)])
        b = make_sum([[1, 0], [0, 1]], [(1, Fraction(7, 64)), (1, Fraction(11, 64))])
        cert = find_tau(a, b, ATOMS2, d=0.0, eps=1e-2)
        assert cert.deviation < 1e-2
        assert abs(deviation(a, b, ATOMS2, cert.tau) - cert.deviation) < 1e-12

    def test_scan_strategy_forced(self):
        a = make_sum([[1]], [(1, 0)])
        b = make_sum([[1]], [(1, Fraction(1, 4))])
        cert = find_tau(a, b, ATOMS1, d=0.0, eps=1e-3, strategy="scan")
        assert cert.strategy in ("scan", "scan+refine")
        assert cert.deviation < 1e-3

    def test_lattice_strategy_forced(self):
        a = make_sum([[1, 0], [0, 1]], [(1, 0), (1, 0)])
        b = sample_equivalent(a, seed=10)
        cert = find_tau(a, b, ATOMS2, d=0.0, eps=1e-2, strategy="lattice")
        assert cert.strategy == "lattice"
        assert cert.deviation < 1e-2

    def test_translate_pair_with_float_phases(self):
        a = make_sum([[1], [2]], [(1, 0), (0.5, Fraction(1, 8))])
        b = translate(a, 0.35, ATOMS1)
        cert = find_tau(a, b, ATOMS1, d=0.0, eps=1e-6)
        assert cert.deviation < 1e-6

    def test_monotone_restartability(self):
        a = make_sum([[1]], [(1, 0)])
        b = make_sum([[1]], [(1, Fraction(1, 3))])
        cert1 = find_tau(a, b, ATOMS1, d=0.0, eps=1e-4)
        cert2 = find_tau(a, b, ATOMS1, d=cert1.tau, eps=1e-4)
        assert cert2.tau > cert1.tau

    def test_not_equivalent_rejected(self):
        a = make_sum([[1], [2]], [(1, 0), (1, 0)])
        b = make_sum([[1], [2]], [(1, Fraction(1, 4)), (1, 0)])
        with pytest.raises(NotEquivalentInputError):
            find_tau(a, b, ATOMS1, d=0.0, eps=0.1)

    def test_budget_exhaustion_reports_best(self):
        a = make_sum([[1, 0], [0, 1]], [(1, 0), (1, 0)])
        b = sample_equivalent(a, seed=2)
        with pytest.raises(BudgetExhaustedError) as err:
            find_tau(a, b, ATOMS2, d=0.0, eps=1e-30, budget=20_000, strategy="scan")
        assert err.value.best_deviation is not None
        assert err.value.evaluations >= 20_000

    def test_certificates_revalidate(self):
        rng = random.Random(3)
        for seed in range(5):
            a = make_sum(
                [[1, 0], [0, 1], [1, 1]],
                [(0.5, Fraction(rng.randrange(8), 8)) for _ in range(3)],
            )
            b = sample_equivalent(a, seed=seed)
            cert = find_tau(a, b, ATOMS2, d=0.5, eps=1e-2)
            assert cert.tau > 0.5
            assert abs(deviation(a, b, ATOMS2, cert.tau) - cert.deviation) < 1e-12
            assert cert.deviation < 1e-2


class TestEnumerateTaus:
    def test_periodic_single_frequency(self):
        a = make_sum([[1]], [(1, 0)])
        taus, report = enumerate_taus(a, a, ATOMS1, eps=0.1, t_range=(0.0, 50.0))
        # sub-eps minima sit at 2 pi k; k = 0 enters as tau -> 0+ inside the open range
        assert len(taus) == 8
        for k, tau in enumerate(taus):
            assert abs(tau - 2 * math.pi * k) < 1e-3
        assert abs(report.max_gap - 2 * math.pi) < 1e-3
        assert report.window_count >= 6
        assert all(c >= 1 for c in report.taus_per_window)

    def test_every_tau_certifies_uniform_bound(self):
        a = make_sum([[1], [2]], [(1, 0), (1, 0)])
        b = sample_equivalent(a, seed=1)
        taus, _ = enumerate_taus(a, b, ATOMS1, eps=0.5, t_range=(0.0, 100.0))
        assert taus
        for tau in taus:
            assert deviation(a, b, ATOMS1, tau) < 0.5

    def test_huge_eps_everything_qualifies(self):
        a = make_sum([[1]], [(1, 0)])
        b = make_sum([[1]], [(1, Fraction(1, 2))])
        eps = 5.0  # exceeds sum of moduli on both sides
        taus, _ = enumerate_taus(a, b, ATOMS1, eps=eps, t_range=(0.0, 20.0))
        assert taus
        # triangle bound: every point of the range qualifies
        for tau in [0.1, 1.0, 5.0, 19.9]:
            assert deviation(a, b, ATOMS1, tau) < eps

    def test_empty_result_when_no_taus_in_range(self):
        a = make_sum([[1]], [(1, 0)])
        b = make_sum([[1]], [(1, Fraction(1, 2))])
        # the only sub-eps taus sit near pi + 2 pi k, outside (0, 2)
        taus, report = enumerate_taus(a, b, ATOMS1, eps=0.05, t_range=(0.0, 2.0))
        assert taus == []
        assert report.window_count == 0
        assert report.max_gap == math.inf


class TestDenseTranslates:
    def geometric_pair(self, n_terms, seed, tail=None):
        coords = [[1, 0], [0, 1], [1, 1], [2, 0], [0, 2], [2, 1], [1, 2], [2, 2]][:n_terms]
        coefficients = [(2.0 ** (-j), Fraction(j, 16)) for j in range(n_terms)]
        if tail is None:
            tail = sum(4.0 ** (-j) for j in range(n_terms, n_terms + 40))
        f = ExponentialSum.make(coords, coefficients, tail)
        return f, sample_equivalent(f, seed=seed)

    def test_certified_bounds_hold(self):
        f, h = self.geometric_pair(4, seed=21)
        run = dense_translate_sequence(f, h, ATOMS2, n_max=4)
        assert len(run.taus) == 4
        assert all(a < b for a, b in zip(run.taus, run.taus[1:]))
        for measured, bound in run.certified_bounds:
            assert measured < bound

    def test_measured_matches_b2_distance(self):
        f, h = self.geometric_pair(3, seed=5)
        run = dense_translate_sequence(f, h, ATOMS2, n_max=3)
        for tau, (measured, _) in zip(run.taus, run.certified_bounds):
            direct = b2_distance_exact(translate(f, tau, ATOMS2), h) ** 2
            assert measured == direct

    def test_self_target(self):
        f, _ = self.geometric_pair(3, seed=0)
        run = dense_translate_sequence(f, f, ATOMS2, n_max=3)
        for measured, bound in run.certified_bounds:
            assert measured < bound

    def test_single_step(self):
        f, h = self.geometric_pair(2, seed=9)
        run = dense_translate_sequence(f, h, ATOMS2, n_max=1)
        assert len(run.taus) == 1
        measured, bound = run.certified_bounds[0]
        assert measured < bound == 5.0 * run.eps_sequence[0]

    def test_zero_tail_final_step_rejected(self):
        f = make_sum([[1], [2]], [(1, 0), (0.5, 0)])
        with pytest.raises(DegenerateInputError):
            dense_translate_sequence(f, f, ATOMS1, n_max=2)


class TestUniformSetCheck:
    def test_arithmetic_progression(self):
        taus = [float(k) for k in range(60)]
        ratio = uniform_set_check(taus, l=10.0)
        assert ratio <= 1.1 + 1e-9

    def test_period_two_pi(self):
        taus = [2 * math.pi * k for k in range(1, 50)]
        ratio = uniform_set_check(taus, l=4 * math.pi)
        assert ratio <= 2.0

    def test_cluster_then_gap(self):
        taus = [0.0, 0.05, 0.1, 100.0]
        assert uniform_set_check(taus, l=1.0) == math.inf

    def test_short_span_rejected(self):
        with pytest.raises(DegenerateInputError):
            uniform_set_check([0.0, 1.0], l=1.0)


class TestExtractConvergentSubsequence:
    def test_constant_sequence(self):
        f = make_sum([[1], [2]], [(1, 0), (0.5, Fraction(1, 8))])
        indices, limit = extract_convergent_subsequence([f] * 5, tol=0.01)
        assert indices == [0, 1, 2, 3, 4]
        assert limit == f

    def test_alternating_quarter_phases(self):
        base = make_sum([[1]], [(1, Fraction(1, 4))])
        fs = []
        for l in range(8):
            phase = Fraction(1, 4) if l % 2 == 0 else Fraction(-1, 4)
            fs.append(make_sum([[1]], [(1, phase)]))
        indices, limit = extract_convergent_subsequence(fs, tol=0.1)
        assert indices == [0, 2, 4, 6]
        assert limit.coeffs[0].phase.exact == Fraction(1, 4)
        assert limit == base

    def test_random_family(self):
        f = make_sum([[1, 0], [0, 1]], [(0.04, 0), (0.03, 0)])
        fs = [sample_equivalent(f, seed=s) for s in range(16)]
        indices, limit = extract_convergent_subsequence(fs, tol=0.1)
        assert len(indices) >= 2
        assert indices == sorted(indices)
        for i, j in zip(indices, indices[1:]):
            assert b2_distance_exact(fs[i], fs[j]) < 0.1
        assert decide_equivalence(fs[0], limit).is_equivalent

    def test_rejects_inequivalent_family(self):
        a = make_sum([[1], [2]], [(1, 0), (1, 0)])
        b = make_sum([[1], [2]], [(1, Fraction(1, 4)), (1, 0)])
        with pytest.raises(NotEquivalentFamilyError):
            extract_convergent_subsequence([a, b], tol=0.1)
