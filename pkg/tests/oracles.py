"""Shared independent oracles and instance generators for the test suite.

The torus-grid oracle re-decides phase-congruence systems by exhaustive
search on a rational grid, entirely independent of the kernel/lattice
machinery inside the package (it only borrows the HNF pivot product to
size a grid that provably contains a solution whenever one exists:
back-substitution through the row echelon form bounds every solution
denominator by lcm(theta denominators) * product of pivots).
"""

import random
from fractions import Fraction
from math import lcm

import numpy as np

from aptk import exact
from aptk.freq import FrequencySet, integralize, natural_basis
from aptk.sums import Coefficient, ExponentialSum


def congruence_system(a: ExponentialSum, b: ExponentialSum):
    """The integral system (rows, theta) that equivalence of a and b reduces to."""
    info = natural_basis(a.freqs)
    if not info.is_integral:
        info = integralize(info)
    rows, theta = [], []
    for j, (ca, cb) in enumerate(zip(a.coeffs, b.coeffs)):
        if ca.modulus == 0:
            continue
        rows.append([int(c) for c in info.coord_matrix[j]])
        theta.append((cb.phase.exact - ca.phase.exact) % 1)
    return rows, theta, info.size


def sound_grid_denominator(rows, theta) -> int:
    """Grid denominator L such that a solution on the (1/L)-grid exists
    whenever the system is solvable at all."""
    q = lcm(*(t.denominator for t in theta), 1)
    if not rows or not rows[0]:
        return q
    h, _ = exact.hnf(rows)
    pivot_product = 1
    for row in h:
        lead = next((x for x in row if x != 0), None)
        if lead is not None:
            pivot_product *= abs(lead)
    return q * max(1, pivot_product)


def grid_decide(rows, theta, m) -> bool:
    """Exhaustive search for x in [0,1)^m with rows @ x = theta (mod 1)."""
    if m == 0 or not rows:
        return all(t.denominator == 1 for t in theta)
    L = sound_grid_denominator(rows, theta)
    r = np.array(rows, dtype=np.int64)
    targets = np.array([int(t * L) % L for t in theta], dtype=np.int64)
    if m == 1:
        xs = np.arange(L, dtype=np.int64)
        residues = (r[:, 0:1] * xs[None, :]) % L
        return bool(np.any(np.all(residues == targets[:, None], axis=0)))
    if m == 2:
        xs = np.arange(L, dtype=np.int64)
        partial = (r[:, 1:2] * xs[None, :]) % L  # rows x x2
        for x1 in range(L):
            lhs = (r[:, 0:1] * x1 + partial) % L
            if np.any(np.all(lhs == targets[:, None], axis=0)):
                return True
        return False
    raise NotImplementedError("grid oracle implemented for m <= 2")


def grid_min_deviation(rows, theta, moduli, m) -> float:
    """Minimum of the deviation metric over the torus grid (m == 1 only)."""
    assert m == 1
    L = sound_grid_denominator(rows, theta)
    xs = np.arange(L) / L
    total = np.zeros(L)
    for row, t, mod in zip(rows, theta, moduli):
        delta = row[0] * xs - float(t)
        total += mod * np.abs(np.exp(2j * np.pi * delta) - 1.0)
    return float(total.min())


def random_instance(rng: random.Random, max_atoms=2, max_freqs=6, coord_bound=4, phase_denom=8):
    """A random exact-phase instance pair (a, b) over integer coordinates.

    Half the time b is built from a random witness over the integralized
    natural basis (hence equivalent by construction); otherwise b gets
    independent random phases.
    """
    n_atoms = rng.randint(1, max_atoms)
    n_freqs = rng.randint(1, max_freqs)
    coords = set()
    while len(coords) < n_freqs:
        coords.add(tuple(rng.randint(-coord_bound, coord_bound) for _ in range(n_atoms)))
    coords = sorted(coords)
    phases_a = [Fraction(rng.randrange(phase_denom), phase_denom) for _ in coords]
    moduli = [1.0 for _ in coords]
    a = ExponentialSum(
        FrequencySet.from_coords(coords),
        tuple(Coefficient.make(m, p) for m, p in zip(moduli, phases_a)),
    )
    if rng.random() < 0.5:
        info = natural_basis(a.freqs)
        if not info.is_integral:
            info = integralize(info)
        x = [Fraction(rng.randrange(phase_denom), phase_denom) for _ in range(info.size)]
        phases_b = [
            pa + sum(r * xi for r, xi in zip(row, x))
            for pa, row in zip(phases_a, info.coord_matrix)
        ]
    else:
        phases_b = [Fraction(rng.randrange(phase_denom), phase_denom) for _ in coords]
    b = ExponentialSum(
        a.freqs, tuple(Coefficient.make(m, p) for m, p in zip(moduli, phases_b))
    )
    return a, b
