"""Composite Fejer damping factors and the approximating polynomials they
produce.

The scheme damps the coefficient at a frequency with integer coordinates
``h`` over an integral basis by ``prod_k max(0, 1 - |h_k|/(N_k + 1))`` --
the Fourier coefficients of a product of one-dimensional Fejer kernels of
orders ``N_k`` running at the basis rates.  The factors depend only on the
frequency coordinates, never on the coefficients, are zero outside the box
``|h_k| <= N_k``, and converge to 1 on every fixed frequency as the orders
grow, which is what drives B^2 convergence of the approximants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import math

from .errors import NonIntegralBasisError, SpanMismatchError
from .freq import BasisInfo, Frequency, _expand_over
from .sums import Coefficient, ExponentialSum


@dataclass(frozen=True)
class FejerScheme:
    """Damping factors for one choice of per-basis-element orders."""

    basis_ref: BasisInfo
    orders: tuple[int, ...]
    factors: dict[int, Fraction]


def _factor_from_coords(coords: Sequence[Fraction], orders: Sequence[int]) -> Fraction:
    p = Fraction(1)
    for h, n in zip(coords, orders):
        if h.denominator != 1:
            # Non-integer coordinates fall outside the kernel's spectrum.
            return Fraction(0)
        p *= max(Fraction(0), 1 - Fraction(abs(h.numerator), n + 1))
        if p == 0:
            return Fraction(0)
    return p


def fejer_factors(basis: BasisInfo, orders: Sequence[int]) -> FejerScheme:
    """Compute the damping factor for every frequency row of ``basis``."""
    if not basis.is_integral:
        raise NonIntegralBasisError("fejer_factors requires an integral basis; run integralize first")
    if len(orders) != basis.size:
        raise ValueError("one order per basis element is required")
    if any(n < 1 for n in orders):
        raise ValueError("orders must be >= 1")
    orders = tuple(int(n) for n in orders)
    factors = {j: _factor_from_coords(row, orders) for j, row in enumerate(basis.coord_matrix)}
    return FejerScheme(basis_ref=basis, orders=orders, factors=factors)


def factor_for(scheme: FejerScheme, freq: Frequency) -> Fraction:
    """Damping factor for an arbitrary frequency in the basis span."""
    coords = _expand_over(list(scheme.basis_ref.basis), freq)
    if coords is None:
        raise SpanMismatchError("frequency lies outside the span of the scheme basis")
    return _factor_from_coords(coords, scheme.orders)


def approximant(f: ExponentialSum, scheme: FejerScheme) -> ExponentialSum:
    """The damped polynomial with coefficients ``p_j * a_j`` (tail dropped)."""
    coeffs = []
    for freq, c in zip(f.freqs, f.coeffs):
        p = factor_for(scheme, freq)
        if p == 0 or c.modulus == 0.0:
            coeffs.append(Coefficient.zero())
        else:
            coeffs.append(Coefficient(c.modulus * float(p), c.phase))
    return ExponentialSum(f.freqs, tuple(coeffs), 0.0)


def approximation_error(f: ExponentialSum, scheme: FejerScheme) -> float:
    """Exact B^2 distance between ``f`` and its damped approximant:
    ``sqrt(sum |a_j|^2 (1 - p_j)^2 + tail_energy)``."""
    total = 0.0
    for freq, c in zip(f.freqs, f.coeffs):
        p = factor_for(scheme, freq)
        total += c.energy * float((1 - p) * (1 - p))
    return math.sqrt(total + f.tail_energy)
