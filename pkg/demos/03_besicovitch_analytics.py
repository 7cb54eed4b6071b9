"""Mean values, Parseval energies, and distances in the B^2 seminorm.

For stored sums everything reduces to coefficient arithmetic: the mean of
e^{i lambda t} vanishes except at lambda = 0, so Fourier coefficients,
energies, and B^2 distances are exact.  A trapezoid-rule estimator shows
the same quantities emerging from time averages of the signal itself.
"""

import math
from fractions import Fraction

from aptk import (
    AtomTable,
    ExponentialSum,
    Frequency,
    b2_distance_exact,
    fourier_coefficient,
    mean_value_estimate,
    mean_value_exact,
    parseval_energy,
    translate,
)

atoms = AtomTable(("one", "root2"), {"one": 1.0, "root2": math.sqrt(2)})

# 1.5 + e^{it} + 0.5 e^{i sqrt2 t}
f = ExponentialSum.make(
    [[0, 0], [1, 0], [0, 1]],
    [(1.5, 0), (1.0, Fraction(1, 6)), (0.5, 0)],
)

print("exact mean value (coefficient at zero):", mean_value_exact(f))
print("Parseval energy:", parseval_energy(f), "= 1.5^2 + 1^2 + 0.5^2")

# Translates keep the energy and move each coefficient on its circle.
g = translate(f, 2.0, atoms)
print("energy after translating by 2.0:", parseval_energy(g))
print("B^2 distance f to its translate:", round(b2_distance_exact(f, g), 6))
print("B^2 distance f to the zero sum: ", round(b2_distance_exact(f, ExponentialSum.zero()), 6), "= sqrt(energy)")

# Numeric mean values: average the signal itself over growing windows.
signal = lambda t: f.evaluate(t, atoms)  # noqa: E731
print("\nestimating coefficients from time averages:")
for target in f.freqs:
    est = mean_value_estimate(signal, target, atoms, schedule=[50.0, 200.0, 800.0])
    exact = fourier_coefficient(f, target)
    print(
        "  lambda coords", tuple(str(c) for c in target.coords),
        " exact", f"{exact:.6f}",
        " estimates", [f"{abs(e - exact):.2e}" for e in est.estimates],
        "(errors shrink ~ 1/l)",
    )

# A frequency outside the spectrum averages to zero.
est = mean_value_estimate(signal, Frequency.of(2, 0), atoms, schedule=[50.0, 400.0])
print("  off-spectrum frequency: |estimates| =", [f"{abs(e):.2e}" for e in est.estimates])
