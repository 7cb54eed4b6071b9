"""Composite kernel damping: polynomial approximants that converge in B^2.

Each frequency with integer coordinates h over an integral basis gets the
damping factor prod_k max(0, 1 - |h_k|/(N_k + 1)).  Only finitely many
frequencies survive any fixed order, the factors never depend on the
coefficients, and raising the orders drives the approximation error to
zero.
"""

from fractions import Fraction

from aptk import (
    ExponentialSum,
    approximant,
    approximation_error,
    decide_equivalence,
    fejer_factors,
    integralize,
    natural_basis,
    sample_equivalent,
)

f = ExponentialSum.make(
    [[0, 0], [1, 0], [0, 1], [1, 1], [2, 1]],
    [(1.0, 0), (0.8, Fraction(1, 8)), (0.6, 0), (0.4, Fraction(1, 3)), (0.2, 0)],
)
info = natural_basis(f.freqs)
if not info.is_integral:
    info = integralize(info)

print("damping factors by kernel order (per frequency):")
print("  order | " + " | ".join(f"h={tuple(int(c) for c in row)}" for row in info.coord_matrix))
for order in (1, 2, 4, 8):
    scheme = fejer_factors(info, [order] * info.size)
    cells = " | ".join(str(scheme.factors[j]).center(9) for j in range(len(f.freqs)))
    print(f"  {order:5d} | {cells}")

print("\napproximation error by order (exact B^2 distance to the damped sum):")
for order in (1, 2, 4, 8, 16, 32, 64, 128):
    scheme = fejer_factors(info, [order] * info.size)
    print(f"  N = {order:4d}: {approximation_error(f, scheme):.6f}")

# The damped coefficients of order 2:
scheme = fejer_factors(info, [2, 2])
damped = approximant(f, scheme)
print("\norder-2 approximant moduli:", [round(c.modulus, 4) for c in damped.coeffs])

# Factors ignore the coefficients entirely, so damping two equivalent sums
# yields equivalent polynomials with the same witness.
g = sample_equivalent(f, seed=8)
print(
    "equivalence survives damping:",
    decide_equivalence(approximant(f, scheme), approximant(g, scheme)).status,
)
