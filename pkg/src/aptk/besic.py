"""Besicovitch-space analytics: mean values, Fourier coefficients,
Parseval energies, and B^2 seminorm distances.

For stored exponential sums everything is computed exactly from the
coefficients (the mean of ``e^{i lambda t}`` is 1 at ``lambda = 0`` and 0
otherwise, so Parseval reduces B^2 geometry to coefficient arithmetic).
For sampled signals a trapezoid-rule estimator of the mean value is
provided with a convergence diagnostic sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import EvaluationFailureError, TailPresentError
from .freq import AtomTable, Frequency, eval_numeric
from .sums import TWO_PI, ExponentialSum

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def mean_value_exact(f: ExponentialSum) -> complex:
    """Mean value of a trigonometric polynomial: its coefficient at zero."""
    if not f.is_polynomial:
        raise TailPresentError("mean_value_exact requires a polynomial (tail_energy == 0)")
    for freq, c in zip(f.freqs, f.coeffs):
        if freq.is_zero:
            return c.complex_value
    return 0j


def fourier_coefficient(f: ExponentialSum, lam: Frequency) -> complex:
    """Exact coefficient of ``lam`` in the stored prefix (0 when absent)."""
    for freq, c in zip(f.freqs, f.coeffs):
        if freq.coords == lam.coords:
            return c.complex_value
    return 0j


def parseval_energy(f: ExponentialSum) -> float:
    """Parseval energy: sum of squared moduli plus the tail energy."""
    return sum(c.energy for c in f.coeffs) + f.tail_energy


def _coefficient_table(f: ExponentialSum) -> dict:
    return {freq.coords: c for freq, c in zip(f.freqs, f.coeffs)}


def _squared_diff(mod1: float, ph1, mod2: float, ph2) -> float:
    # Polar form |m1 e^{2 pi i p1} - m2 e^{2 pi i p2}|^2 avoids complex
    # cancellation and is exact when one side vanishes.
    if mod1 == 0.0:
        return mod2 * mod2
    if mod2 == 0.0:
        return mod1 * mod1
    if ph1.exact is not None and ph2.exact is not None:
        delta = float(ph1.exact - ph2.exact)
    else:
        delta = ph1.approx - ph2.approx
    return mod1 * mod1 + mod2 * mod2 - 2.0 * mod1 * mod2 * math.cos(TWO_PI * delta)


def b2_distance_exact(f: ExponentialSum, g: ExponentialSum) -> float:
    """B^2 distance via Parseval over the union spectrum.

    For polynomials this is the exact seminorm distance.  When tail energy
    is present the unknown tails are combined by the worst case
    ``(sqrt(tail_f) + sqrt(tail_g))^2`` added under the square root, so the
    result is an upper bound on the true distance (and tight when one tail
    is absent and disjoint from the other spectrum).
    """
    table_f = _coefficient_table(f)
    table_g = _coefficient_table(g)
    total = 0.0
    # Sorted union keeps the float summation order symmetric in (f, g).
    for coords in sorted(set(table_f) | set(table_g), key=lambda c: (len(c), c)):
        cf = table_f.get(coords)
        cg = table_g.get(coords)
        mod1, ph1 = (cf.modulus, cf.phase) if cf is not None else (0.0, None)
        mod2, ph2 = (cg.modulus, cg.phase) if cg is not None else (0.0, None)
        total += _squared_diff(mod1, ph1, mod2, ph2)
    tail = math.sqrt(f.tail_energy) + math.sqrt(g.tail_energy)
    return math.sqrt(total + tail * tail)


@dataclass(frozen=True)
class MeanEstimate:
    """Numeric mean-value estimate with its convergence diagnostics.

    ``residuals[i] = |estimates[i+1] - estimates[i]|`` for the increasing
    half-lengths of the schedule; ``value`` is the final estimate.
    """

    value: complex
    half_lengths: tuple[float, ...]
    residuals: tuple[float, ...]
    estimates: tuple[complex, ...]


def mean_value_estimate(
    signal: Callable,
    lam: Frequency,
    atoms: AtomTable,
    schedule: Sequence[float],
) -> MeanEstimate:
    """Trapezoid estimates of ``(2l)^{-1} int_{-l}^{l} signal(t) e^{-i lam t} dt``.

    The quadrature step is ``min(0.01, 0.1/|lam|)`` (0.01 when ``lam`` is
    zero), fixed so that reported numbers are reproducible bit-for-bit for
    a given schedule.  The signal handle may accept numpy arrays; a
    pointwise fallback is used otherwise.
    """
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be a nonempty strictly increasing sequence")
    if schedule[0] <= 0:
        raise ValueError("half-lengths must be positive")
    lam_num = eval_numeric(lam, atoms)
    step = 0.01 if lam_num == 0 else min(0.01, 0.1 / abs(lam_num))
    estimates = []
    for l in schedule:
        n = max(2, math.ceil(2 * l / step))
        ts = np.linspace(-l, l, n + 1)
        try:
            values = np.asarray(signal(ts), dtype=complex)
            if values.shape != ts.shape:
                raise ValueError
        except EvaluationFailureError:
            raise
        except Exception:
            try:
                values = np.array([complex(signal(t)) for t in ts])
            except Exception as e:  # noqa: BLE001
                raise EvaluationFailureError(f"signal evaluation failed: {e}") from e
        if not np.all(np.isfinite(values.real)) or not np.all(np.isfinite(values.imag)):
            raise EvaluationFailureError("signal returned non-finite values")
        integrand = values * np.exp(-1j * lam_num * ts)
        estimates.append(complex(_trapezoid(integrand, ts) / (2 * l)))
    residuals = tuple(abs(b - a) for a, b in zip(estimates, estimates[1:]))
    return MeanEstimate(
        value=estimates[-1],
        half_lengths=tuple(float(l) for l in schedule),
        residuals=residuals,
        estimates=tuple(estimates),
    )
