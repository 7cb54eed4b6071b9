"""Constructive search for translation numbers and dense-translate sequences.

The objective is the deviation ``D(tau) = sum_j |a_j e^{i lambda_j tau} - b_j|``:
any ``tau`` with ``D(tau) < eps`` is a certified cross-translation number,
because ``|f(t + tau) - g(t)| <= D(tau)`` uniformly in ``t``.  Every result
returned here is verified by evaluating ``D`` directly, so how a candidate
``tau`` was produced never weakens the certificate.

Two production strategies are available:

* ``scan``: coarse sampling of ``D`` at a step tied to its Lipschitz bound
  ``|D'| <= sum |a_j| |lambda_j|``, with golden-section refinement around
  sampled local minima and a doubling horizon.
* ``lattice``: simultaneous Diophantine approximation guided by the stored
  equivalence witness.  One basis phase is matched exactly, which turns the
  remaining constraints into an inhomogeneous Kronecker problem over one
  integer; candidates come from LLL+Babai rounding and from a vectorized
  integer sweep.

``auto`` (the default) tries the lattice route when a witness is available
and falls back to scanning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .besic import b2_distance_exact
from .errors import (
    BudgetExhaustedError,
    DegenerateInputError,
    NotEquivalentFamilyError,
    NotEquivalentInputError,
)
from .freq import AtomTable, eval_numeric
from .sums import (
    TWO_PI,
    ExponentialSum,
    Witness,
    decide_equivalence,
    translate,
)

DEFAULT_BUDGET = 50_000_000
_CHUNK = 1 << 16


@dataclass(frozen=True)
class TauCertificate:
    """A verified translation number and how it was found."""

    tau: float
    deviation: float
    target_eps: float
    lower_bound_d: float
    evaluations: int
    strategy: str  # "scan" | "scan+refine" | "lattice"


@dataclass(frozen=True)
class DensityReport:
    """Windowed counting statistics for a set of translation numbers."""

    interval_length_l: float
    window_count: int
    taus_per_window: tuple[int, ...]
    max_gap: float


@dataclass(frozen=True)
class DenseTranslateRun:
    """Increasing translation numbers with their certified B^2 bounds.

    ``certified_bounds[n-1]`` is the pair (measured squared B^2 distance of
    the full translated sum from the target, bound ``5 * eps_n``).
    """

    taus: tuple[float, ...]
    certified_bounds: tuple[tuple[float, float], ...]
    eps_sequence: tuple[float, ...]


class _Budget:
    def __init__(self, limit: int):
        self.limit = int(limit)
        self.used = 0

    def spend(self, n: int) -> None:
        self.used += int(n)

    @property
    def exhausted(self) -> bool:
        return self.used >= self.limit

    def remaining(self) -> int:
        return max(0, self.limit - self.used)


class _Objective:
    """Vectorized evaluator for D(tau)."""

    def __init__(self, a: ExponentialSum, b: ExponentialSum, atoms: AtomTable):
        self.lams = np.array([eval_numeric(f, atoms) for f in a.freqs])
        self.ca = np.array([c.complex_value for c in a.coeffs])
        self.cb = np.array([c.complex_value for c in b.coeffs])
        self.sum_mod = float(sum(c.modulus for c in a.coeffs))
        self.lam_max = float(np.max(np.abs(self.lams))) if len(self.lams) else 0.0
        self.lipschitz = float(np.sum(np.abs(self.ca) * np.abs(self.lams)))

    def many(self, taus: np.ndarray) -> np.ndarray:
        phases = np.exp(1j * np.multiply.outer(taus, self.lams))
        return np.abs(phases * self.ca[None, :] - self.cb[None, :]).sum(axis=1)

    def one(self, tau: float) -> float:
        return float(np.abs(self.ca * np.exp(1j * self.lams * tau) - self.cb).sum())


def _equivalence_guard(a: ExponentialSum, b: ExponentialSum) -> Optional[Witness]:
    """Require the inputs not be provably inequivalent; return a witness when one exists.

    Exact phases get the exact decision; approximate phases get the
    tolerance decision, whose Undecidable verdict does not block the search
    (the deviation check is the ground truth for any returned tau).
    """
    if a.has_exact_phases and b.has_exact_phases:
        verdict = decide_equivalence(a, b, mode="exact")
    else:
        verdict = decide_equivalence(a, b, mode="tolerance")
    if verdict.status == "not_equivalent":
        raise NotEquivalentInputError("inputs are not equivalent; no translation number exists")
    if verdict.is_equivalent and verdict.witnesses:
        return verdict.witnesses[-1]
    return None


# ---------------------------------------------------------------------------
# LLL + Babai over exact rationals (small dimensions)
# ---------------------------------------------------------------------------


def _gram_schmidt(basis: list[list[Fraction]]):
    ortho: list[list[Fraction]] = []
    mu: list[list[Fraction]] = []
    for i, v in enumerate(basis):
        coeffs = []
        w = list(v)
        for j in range(i):
            denom = sum(x * x for x in ortho[j])
            c = sum(x * y for x, y in zip(v, ortho[j])) / denom if denom else Fraction(0)
            coeffs.append(c)
            w = [a - c * b for a, b in zip(w, ortho[j])]
        mu.append(coeffs)
        ortho.append(w)
    return ortho, mu


def _lll_reduce(basis: list[list[Fraction]], delta: Fraction = Fraction(3, 4)) -> list[list[Fraction]]:
    """Textbook LLL reduction with exact rational arithmetic."""
    basis = [list(v) for v in basis]
    n = len(basis)
    ortho, mu = _gram_schmidt(basis)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[j])]
                ortho, mu = _gram_schmidt(basis)
        norm_k = sum(x * x for x in ortho[k])
        norm_k1 = sum(x * x for x in ortho[k - 1])
        if norm_k >= (delta - mu[k][k - 1] ** 2) * norm_k1:
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            ortho, mu = _gram_schmidt(basis)
            k = max(k - 1, 1)
    return basis


def _babai_nearest(basis: list[list[Fraction]], target: list[Fraction]) -> list[Fraction]:
    """Babai nearest-plane lattice point for the given (reduced) basis."""
    ortho, _ = _gram_schmidt(basis)
    b = list(target)
    point = [Fraction(0)] * len(target)
    for i in range(len(basis) - 1, -1, -1):
        denom = sum(x * x for x in ortho[i])
        if denom == 0:
            continue
        c = round(sum(x * y for x, y in zip(b, ortho[i])) / denom)
        b = [x - c * y for x, y in zip(b, basis[i])]
        point = [p + c * v for p, v in zip(point, basis[i])]
    return point


def _babai_e_candidates(
    alphas: Sequence[float], betas: Sequence[float], eta: float
) -> tuple[list[int], list[int]]:
    """Integer parameter candidates and approximate periods from LLL+Babai.

    We look for an integer ``e`` with every ``e * alpha_k - beta_k`` within
    ``eta`` of an integer.  In the lattice spanned by
    ``(w0 e, W(e alpha_k - n_k))`` with ``W = 1/eta`` and the first axis
    weighted by the reciprocal of the expected parameter scale
    ``eta^-(m-1)``, such an ``e`` is a lattice point near the target
    ``(0, W beta_k)``; LLL reduction plus Babai rounding recovers it
    directly instead of sweeping.  The e-components of the reduced basis
    vectors are approximate periods of the phase system: shifting a good
    candidate by them barely moves the phases, which lets the caller slide
    candidates into the admissible tau range.  Every candidate is verified
    by the caller.
    """
    dims = len(alphas)
    eta = max(min(eta, 0.25), 1e-10)
    w_big = Fraction(1.0 / eta).limit_denominator(10**6)
    e_scale = min(1.0 / eta**dims, 1e15)
    w_small = Fraction(1, int(e_scale) + 1)
    rows: list[list[Fraction]] = []
    first = [w_small] + [Fraction(a).limit_denominator(10**9) * w_big for a in alphas]
    rows.append(first)
    for k in range(dims):
        row = [Fraction(0)] * (dims + 1)
        row[k + 1] = w_big
        rows.append(row)
    reduced = _lll_reduce(rows)
    target = [Fraction(0)] + [Fraction(b).limit_denominator(10**9) * w_big for b in betas]
    point = _babai_nearest(reduced, target)
    base = int(round(point[0] / w_small))
    candidates = [base]
    periods = sorted({abs(int(round(v[0] / w_small))) for v in reduced} - {0})
    for step in periods[:2] or [1]:
        for mult in (1, -1, 2, -2):
            e = base + mult * step
            if e not in candidates:
                candidates.append(e)
    return candidates, periods


# ---------------------------------------------------------------------------
# Production strategies
# ---------------------------------------------------------------------------


def _lattice_strategy(
    witness: Witness,
    atoms: AtomTable,
    objective: _Objective,
    d: float,
    eps: float,
    budget: _Budget,
) -> Optional[tuple[float, float]]:
    """Witness-guided simultaneous-approximation search.

    Matching ``tau * gamma_k / (2 pi) = x_k (mod 1)`` on every basis phase
    within ``eta`` turns drives the deviation below
    ``2 pi * eta * sum_j |a_j| ||h_j||_1``; one phase is matched exactly and
    the rest are searched over a single integer parameter.
    """
    info = witness.basis_ref
    m = info.size
    if m == 0:
        tau = d + 1.0
        dev = objective.one(tau)
        budget.spend(1)
        return (tau, dev) if dev < eps else None
    gammas = [eval_numeric(g, atoms) for g in info.basis]
    x = [float(p.exact) if p.exact is not None else p.approx for p in witness.x]
    cs = [g / TWO_PI for g in gammas]
    # Parametrize by the constraint with the fastest wrap rate.
    k_star = max(range(m), key=lambda k: abs(cs[k]))
    c_star = cs[k_star]
    if c_star == 0:
        return None

    # Per-phase tolerance in turns that certifies D < eps (then verified anyway).
    h_weight = 0.0
    for row, mod in zip(info.coord_matrix, np.abs(objective.ca)):
        h_weight += float(mod) * float(sum(abs(h) for h in row))
    eta = eps / (TWO_PI * h_weight) if h_weight > 0 else 0.25

    def tau_of(e: int) -> float:
        return (x[k_star] + e) / c_star

    def first_e_above(dd: float) -> int:
        raw = dd * c_star - x[k_star]
        return math.floor(raw) + 1 if c_star > 0 else math.ceil(raw) - 1

    e_dir = 1 if c_star > 0 else -1
    e0 = first_e_above(d)
    others = [k for k in range(m) if k != k_star]

    if not others:
        tau = tau_of(e0)
        dev = objective.one(tau)
        budget.spend(1)
        return (tau, dev) if dev < eps else None

    alphas = [cs[k] / c_star for k in others]
    betas = [x[k] - x[k_star] * cs[k] / c_star for k in others]

    def probe(e: int) -> Optional[tuple[float, float]]:
        tau = tau_of(e)
        if tau <= d:
            return None
        dev = objective.one(tau)
        budget.spend(1)
        return (tau, dev) if dev < eps else None

    # LLL+Babai candidates first; wrong-direction hits slide into the
    # admissible range along the approximate periods.
    try:
        candidates, periods = _babai_e_candidates(alphas, betas, eta)
        for e in candidates:
            if (e - e0) * e_dir >= 0:
                found = probe(e)
                if found:
                    return found
            else:
                for p in periods[:3]:
                    step = p * e_dir if p else 0
                    if step == 0:
                        continue
                    j = -((e - e0) * e_dir) // p + 1
                    for jj in (j, j + 1):
                        found = probe(e + jj * step)
                        if found:
                            return found
    except (OverflowError, ZeroDivisionError):
        pass

    # Vectorized sweep over the integer parameter.  The phase filter is a
    # relaxed multiple of the certified tolerance: sign cancellation inside
    # the coordinate dot products lets true hits appear earlier, and every
    # survivor is verified against D anyway.
    eta_filter = min(0.45, 4.0 * eta)
    alphas_arr = np.array(alphas)
    betas_arr = np.array(betas)
    e_lo = e0
    while not budget.exhausted:
        es = e_lo + e_dir * np.arange(_CHUNK)
        budget.spend(_CHUNK)
        frac = (np.multiply.outer(es.astype(float), alphas_arr) - betas_arr[None, :] + 0.5) % 1.0 - 0.5
        mask = np.all(np.abs(frac) < eta_filter, axis=1)
        if np.any(mask):
            taus = np.array([tau_of(int(e)) for e in es[mask]])
            devs = objective.many(taus)
            budget.spend(len(taus))
            hits = np.flatnonzero((devs < eps) & (taus > d))
            if hits.size:
                i = int(hits[0])
                return float(taus[i]), float(devs[i])
        e_lo = e_lo + e_dir * _CHUNK
    return None


def _refine(objective: _Objective, lo: float, mid: float, hi: float, budget: _Budget) -> tuple[float, float]:
    """Golden-section refinement of a sampled local minimum."""
    calls = [0]

    def fun(t):
        calls[0] += 1
        return objective.one(t)

    try:
        if objective.one(mid) < min(objective.one(lo), objective.one(hi)):
            res = minimize_scalar(fun, bracket=(lo, mid, hi), method="golden", options={"xtol": 1e-12})
        else:
            res = minimize_scalar(fun, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    except Exception:  # bracket failures fall back to the bounded solver
        res = minimize_scalar(fun, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    budget.spend(calls[0] + 3)
    return float(res.x), float(res.fun)


def _scan_strategy(
    objective: _Objective,
    d: float,
    eps: float,
    budget: _Budget,
) -> tuple[float, float, str]:
    """Coarse scan at the Lipschitz-tied step with doubling horizon."""
    if objective.lam_max == 0 or objective.sum_mod == 0:
        tau = d + 1.0
        dev = objective.one(tau)
        budget.spend(1)
        if dev < eps:
            return tau, dev, "scan"
        raise BudgetExhaustedError(
            "constant objective never beats eps", best_tau=tau, best_deviation=dev, evaluations=budget.used
        )
    delta = min(0.1, eps / (2.0 * objective.sum_mod * objective.lam_max))
    slack = objective.lipschitz * delta / 2.0
    horizon = 4096 * delta
    start = d
    best_tau, best_dev = None, math.inf
    while not budget.exhausted:
        stop = d + horizon
        t = start
        while t < stop and not budget.exhausted:
            n = min(_CHUNK, max(2, int((stop - t) / delta) + 1), budget.remaining())
            taus = t + delta * np.arange(1, n + 1)
            values = objective.many(taus)
            budget.spend(n)
            i_best = int(np.argmin(values))
            if values[i_best] < best_dev:
                best_dev, best_tau = float(values[i_best]), float(taus[i_best])
            hits = np.flatnonzero(values < eps)
            if hits.size:
                i = int(hits[0])
                return float(taus[i]), float(values[i]), "scan"
            candidates = np.flatnonzero(values < eps + slack)
            for i in candidates:
                tau_c = float(taus[int(i)])
                r_tau, r_dev = _refine(objective, tau_c - delta, tau_c, tau_c + delta, budget)
                if r_dev < best_dev:
                    best_dev, best_tau = r_dev, r_tau
                if r_dev < eps and r_tau > d:
                    return r_tau, r_dev, "scan+refine"
            t = float(taus[-1])
        start = stop
        horizon *= 2
    raise BudgetExhaustedError(
        f"no tau with deviation < {eps} found within budget",
        best_tau=best_tau,
        best_deviation=best_dev,
        evaluations=budget.used,
    )


def find_tau(
    a: ExponentialSum,
    b: ExponentialSum,
    atoms: AtomTable,
    d: float,
    eps: float,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "auto",
) -> TauCertificate:
    """Find ``tau > d`` with ``deviation(a, b, atoms, tau) < eps``.

    The returned certificate is always re-checkable: ``deviation`` at the
    stored tau reproduces the stored value.  ``BudgetExhaustedError`` never
    asserts nonexistence (existence is guaranteed for equivalent inputs);
    it reports the best candidate found.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if d < 0:
        raise ValueError("d must be nonnegative")
    if strategy not in ("auto", "scan", "lattice"):
        raise ValueError("strategy must be 'auto', 'scan', or 'lattice'")
    witness = _equivalence_guard(a, b)
    objective = _Objective(a, b, atoms)
    budget_state = _Budget(budget)
    if strategy in ("auto", "lattice") and witness is not None:
        limited = budget_state if strategy == "lattice" else _Budget(min(budget, budget_state.remaining()) // 2)
        found = _lattice_strategy(witness, atoms, objective, d, eps, limited)
        if strategy != "lattice":
            budget_state.spend(limited.used)
        if found is not None:
            tau, dev = found
            return TauCertificate(tau, dev, eps, d, budget_state.used, "lattice")
        if strategy == "lattice":
            raise BudgetExhaustedError(
                "lattice strategy exhausted its budget",
                best_tau=None,
                best_deviation=None,
                evaluations=budget_state.used,
            )
    tau, dev, kind = _scan_strategy(objective, d, eps, budget_state)
    return TauCertificate(tau, dev, eps, d, budget_state.used, kind)


def enumerate_taus(
    a: ExponentialSum,
    b: ExponentialSum,
    atoms: AtomTable,
    eps: float,
    t_range: tuple[float, float],
    max_count: int = 100_000,
    budget: int = DEFAULT_BUDGET,
) -> tuple[list[float], DensityReport]:
    """All sub-eps local minima of D over ``t_range``, plus density statistics.

    Every returned tau certifies the uniform bound
    ``|f1(t + tau) - f2(t)| < eps`` for all ``t``.  Windows of the
    empirically observed maximum gap are then slid across the returned set
    to report how evenly it fills the range.
    """
    _equivalence_guard(a, b)
    t0, t1 = t_range
    if not t1 > t0:
        raise ValueError("t_range must be increasing")
    objective = _Objective(a, b, atoms)
    budget_state = _Budget(budget)
    taus: list[float] = []
    if objective.lam_max == 0 or objective.sum_mod == 0:
        dev = objective.one(t0 + (t1 - t0) / 2)
        if dev < eps:
            taus = [t0 + (t1 - t0) / 2]
        return taus, _density_report(taus)
    delta = min(0.1, eps / (2.0 * objective.sum_mod * objective.lam_max))
    slack = objective.lipschitz * delta / 2.0
    grid = np.arange(t0 + delta, t1 + delta / 2, delta)
    values = np.empty_like(grid)
    for lo in range(0, len(grid), _CHUNK):
        chunk = grid[lo : lo + _CHUNK]
        values[lo : lo + len(chunk)] = objective.many(chunk)
        budget_state.spend(len(chunk))
        if budget_state.exhausted:
            raise BudgetExhaustedError(
                "enumeration budget exhausted", evaluations=budget_state.used
            )
    below = values < eps + slack
    for i in np.flatnonzero(below):
        left = values[i - 1] if i > 0 else math.inf
        right = values[i + 1] if i + 1 < len(values) else math.inf
        if values[i] <= left and values[i] <= right:
            tau_c = float(grid[i])
            r_tau, r_dev = _refine(objective, tau_c - delta, tau_c, tau_c + delta, budget_state)
            if r_dev < eps and t0 < r_tau <= t1:
                if not taus or r_tau - taus[-1] > delta / 2:
                    taus.append(r_tau)
                    if len(taus) >= max_count:
                        break
    return taus, _density_report(taus)


def _density_report(taus: Sequence[float]) -> DensityReport:
    if len(taus) < 2:
        return DensityReport(
            interval_length_l=math.inf, window_count=0, taus_per_window=(), max_gap=math.inf
        )
    arr = np.asarray(taus)
    max_gap = float(np.max(np.diff(arr)))
    window = max_gap
    counts = []
    start = float(arr[0])
    while start + window <= float(arr[-1]) + 1e-12:
        lo = int(np.searchsorted(arr, start, side="left"))
        hi = int(np.searchsorted(arr, start + window, side="left"))
        counts.append(hi - lo)
        start += window
    return DensityReport(
        interval_length_l=window,
        window_count=len(counts),
        taus_per_window=tuple(counts),
        max_gap=max_gap,
    )


def dense_translate_sequence(
    f: ExponentialSum,
    h: ExponentialSum,
    atoms: AtomTable,
    n_max: int,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "auto",
) -> DenseTranslateRun:
    """Increasing translation numbers driving ``f`` to ``h`` in B^2.

    Step ``n`` finds ``tau_n > tau_{n-1}`` whose n-term prefix deviation is
    below ``sqrt(eps_n)`` with ``eps_n`` the energy beyond the n-th stored
    term; the recorded certificate pairs the exact squared B^2 distance of
    the full translated sum from ``h`` with the bound ``5 eps_n``.
    """
    if n_max < 1 or n_max > len(f.freqs):
        raise ValueError("n_max must be between 1 and the stored prefix length")
    _equivalence_guard(f, h)
    energies = [c.energy for c in f.coeffs]
    eps_seq = []
    for n in range(1, n_max + 1):
        eps_n = sum(energies[n:]) + f.tail_energy
        if eps_n <= 0:
            raise DegenerateInputError(
                f"eps_{n} must be positive; add tail energy or reduce n_max"
            )
        eps_seq.append(eps_n)
    taus: list[float] = []
    bounds: list[tuple[float, float]] = []
    prev = 0.0
    for n in range(1, n_max + 1):
        eps_n = eps_seq[n - 1]
        cert = find_tau(
            f.prefix(n), h.prefix(n), atoms, d=prev, eps=math.sqrt(eps_n), budget=budget, strategy=strategy
        )
        prev = cert.tau
        taus.append(cert.tau)
        measured = b2_distance_exact(translate(f, cert.tau, atoms), h) ** 2
        bounds.append((measured, 5.0 * eps_n))
        if not measured < 5.0 * eps_n:
            raise NotEquivalentInputError(
                f"certified bound violated at step {n}: {measured} >= {5.0 * eps_n}"
            )
    return DenseTranslateRun(tuple(taus), tuple(bounds), tuple(eps_seq))


def uniform_set_check(taus: Sequence[float], l: float) -> float:
    """Max/min ratio of counts over sliding windows of length ``l``.

    Windows slide at step ``l/100`` across the span of the (sorted) input;
    only fully interior windows count.  A window is the closed interval
    ``[start, start + l]`` (closed ends make the count robust against
    refinement jitter at window boundaries: an interior window of length
    ``2 * max_gap`` then always holds at least two points).  An empty
    window makes the ratio infinite.
    """
    arr = np.asarray(sorted(taus), dtype=float)
    if l <= 0:
        raise ValueError("l must be positive")
    if len(arr) < 2 or float(arr[-1] - arr[0]) < 3 * l:
        raise DegenerateInputError("span of taus must be at least 3*l")
    step = l / 100.0
    starts = np.arange(float(arr[0]), float(arr[-1]) - l + step / 2, step)
    los = np.searchsorted(arr, starts, side="left")
    his = np.searchsorted(arr, starts + l, side="right")
    counts = his - los
    max_count = int(counts.max())
    min_count = int(counts.min())
    if min_count == 0:
        return math.inf
    return max_count / min_count


def extract_convergent_subsequence(
    fs: Sequence[ExponentialSum], tol: float
) -> tuple[list[int], ExponentialSum]:
    """Sequential-compactness demo: a subsequence whose successive members
    are within ``tol`` of each other in B^2.

    Witness phase vectors place every member on the torus ``[0,1)^m``; the
    cell holding the majority is halved along every axis until the
    surviving members' successive exact B^2 distances all drop below
    ``tol``.  The limit candidate is the final surviving member, equivalent
    to ``fs[0]`` by transitivity.
    """
    if len(fs) < 2:
        raise DegenerateInputError("need at least two sums")
    points: list[tuple[Fraction, ...]] = []
    m = None
    for i, g in enumerate(fs):
        verdict = decide_equivalence(fs[0], g, mode="exact")
        if not verdict.is_equivalent:
            raise NotEquivalentFamilyError(f"sum {i} is not equivalent to sum 0")
        witness = verdict.witnesses[-1]
        coords = tuple(p.exact for p in witness.x)
        if m is None:
            m = len(coords)
        points.append(coords)

    def successive_ok(indices: list[int]) -> bool:
        return all(
            b2_distance_exact(fs[i], fs[j]) < tol for i, j in zip(indices, indices[1:])
        )

    survivors = list(range(len(fs)))
    lo = [Fraction(0)] * (m or 0)
    width = Fraction(1)
    for _depth in range(200):
        if len(survivors) == 1 or m == 0 or successive_ok(survivors):
            return survivors, fs[survivors[-1]]
        half = width / 2
        cells: dict[tuple[int, ...], list[int]] = {}
        for i in survivors:
            key = tuple(1 if points[i][k] >= lo[k] + half else 0 for k in range(m))
            cells.setdefault(key, []).append(i)
        best_key = min(cells, key=lambda k: (-len(cells[k]), k))
        survivors = cells[best_key]
        lo = [lo[k] + half * best_key[k] for k in range(m)]
        width = half
    raise AssertionError("cell refinement failed to converge")
