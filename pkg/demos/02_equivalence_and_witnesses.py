"""Deciding equivalence of exponential sums, exactly.

Two sums over the same frequencies are equivalent when some real phase
vector x rotates one set of coefficients onto the other through the
frequency coordinates: phase(b_j) - phase(a_j) = <r_j, x> modulo whole
turns.  With rational phases this is decidable with no tolerance at all,
and the decision comes with either a witness x or a violated integer
relation.
"""

from fractions import Fraction

from aptk import ExponentialSum, decide_equivalence, sample_equivalent, witness_natural_form

# f = e^{iut} + e^{2iut}: the second frequency is twice the first, so the
# phases are coupled: rotating u by x rotates 2u by 2x.
f = ExponentialSum.make([[1], [2]], [(1, 0), (1, 0)])

# Phases (1/4, 1/2) respect the coupling: witness x = 1/4 of a turn.
g_good = ExponentialSum.make([[1], [2]], [(1, Fraction(1, 4)), (1, Fraction(1, 2))])
verdict = decide_equivalence(f, g_good)
print("phases (1/4, 1/2):", verdict.status)
print("   witness x =", [str(p.exact) for p in verdict.witnesses[-1].x], "turns")

# Phases (1/4, 0) violate the coupling: 2*(1/4) - 0 = 1/2 is not a whole
# number of turns, and the decision procedure names that exact relation.
g_bad = ExponentialSum.make([[1], [2]], [(1, Fraction(1, 4)), (1, 0)])
verdict = decide_equivalence(f, g_bad)
print("phases (1/4, 0):  ", verdict.status)
print("   violated relation u =", verdict.obstruction.relation, "with u.theta =", verdict.obstruction.value)

# Moduli must match exactly; equivalence only rotates coefficients.
g_scaled = ExponentialSum.make([[1], [2]], [(2, 0), (1, 0)])
print("doubled modulus:  ", decide_equivalence(f, g_scaled).status)

# Drawing random members of the equivalence class, reproducibly.
h = sample_equivalent(f, seed=2026)
print("\nsampled phases:", [str(c.phase.exact) for c in h.coeffs])
print("sampled member equivalent?", decide_equivalence(f, h).status)

# The natural-basis form of the witness splits it into a vector in
# [0, 1)^m plus integer shift vectors p_j (zero on basis members).
x0, shifts = witness_natural_form(f, h)
print("natural-form witness x0 =", [str(p.exact) for p in x0.x], "shifts:", shifts)

# Approximate phases (e.g. measured data) go through tolerance mode: the
# deltas are snapped to rationals with bounded denominator and the snapped
# system is decided exactly.
g_float = ExponentialSum.make([[1], [2]], [(1, 0.2500000004), (1, 0.5000000001)])
verdict = decide_equivalence(f, g_float, mode="tolerance")
print("\nfloat phases near (1/4, 1/2):", verdict.status, " residual:", verdict.residual)
