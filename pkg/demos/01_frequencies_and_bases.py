"""Frequencies as exact rational vectors, and the bases they generate.

A frequency set lives over a table of symbolic atoms that are declared
rationally independent.  Everything rational about the set -- which
frequencies depend on which, the natural basis, integral rescalings --
is then exactly computable.  This script walks through the basic objects.
"""

import math

from aptk import AtomTable, FrequencySet, change_of_basis, eval_numeric, integralize, natural_basis

# Two atoms: 1 and sqrt(2).  Declaring them independent is the modelling
# step; the library never tries to detect independence numerically.
atoms = AtomTable(("one", "root2"), {"one": 1.0, "root2": math.sqrt(2)})

# Frequencies are rational combinations of the atoms.
lams = FrequencySet.from_coords(
    [
        [1, 0],            # 1
        [0, 1],            # sqrt(2)
        ["3/2", "1/2"],    # 1.5 + sqrt(2)/2
        [2, 1],            # 2 + sqrt(2)
    ]
)
print("frequencies (radians per unit time):")
for f in lams:
    print("   coords", tuple(str(c) for c in f.coords), "->", eval_numeric(f, atoms))

# The natural basis walks the set in order and keeps what is rationally
# new.  Here the first two frequencies span everything.
info = natural_basis(lams)
print("\nnatural basis members (indices into the set):", info.basis_indices)
print("coordinate matrix rows (lambda_j over the basis):")
for row in info.coord_matrix:
    print("  ", tuple(str(c) for c in row))
print("integral?", info.is_integral, " lcm of denominators:", info.lcm_q)

# Half-integer coordinates above: rescale each basis element so that all
# coordinates become integers.  The span is unchanged.
integral = integralize(info)
print("\nafter integralize (column scales %s):" % (integral.column_scales,))
for row in integral.coord_matrix:
    print("  ", tuple(str(c) for c in row))
print("rescaled basis elements:")
for g in integral.basis:
    print("   coords", tuple(str(c) for c in g.coords), "->", eval_numeric(g, atoms))

# The change-of-basis matrix T satisfies coords_new = coords_old @ T.
t = change_of_basis(info, integral)
print("\nchange of basis natural -> integral:")
for row in t:
    print("  ", tuple(str(c) for c in row))

# A classical one-atom example: {2, 3, 5} over the single atom 1.  The
# greedy rule keeps only 2; the others get fractional coordinates, and the
# integralized basis becomes the humble 1.
one_atom = AtomTable(("one",), {"one": 1.0})
fs = FrequencySet.from_coords([[2], [3], [5]])
nb = natural_basis(fs)
ib = integralize(nb)
print("\n{2, 3, 5}: natural basis", [str(g.coords[0]) for g in nb.basis], end="")
print(", rows", [str(r[0]) for r in nb.coord_matrix], end="")
print("; integralized basis", [str(g.coords[0]) for g in ib.basis], "rows", [str(r[0]) for r in ib.coord_matrix])
