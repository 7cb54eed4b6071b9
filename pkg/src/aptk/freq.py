"""Frequency sets over a declared atom table, and their rational bases.

A frequency is an exact vector of rational multipliers over a fixed ordered
list of symbolic atoms.  The atoms are *assumed* rationally independent --
that contract is what makes rational (in)dependence of frequencies exactly
decidable, since deciding it for arbitrary floating-point reals is not
possible.  Numeric atom values (radians per unit time) are attached only
when time-domain evaluation is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Optional, Sequence, Union

from . import exact
from .errors import EmptySetError, MissingAtomValueError, SpanMismatchError

RationalLike = Union[int, str, Fraction]


def _fraction(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AtomTable:
    """Ordered symbolic atoms, optionally carrying numeric values.

    The declared atoms are assumed Q-linearly independent; every exactness
    guarantee in the package is conditional on that contract.
    """

    names: tuple[str, ...]
    values: Optional[Mapping[str, float]] = None

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("atom names must be distinct")
        if self.values is not None:
            missing = [n for n in self.names if n not in self.values]
            if missing:
                raise MissingAtomValueError(f"no numeric value for atoms {missing}")

    def numeric(self, name: str) -> float:
        if self.values is None or name not in self.values:
            raise MissingAtomValueError(f"no numeric value for atom {name!r}")
        return float(self.values[name])


@dataclass(frozen=True)
class Frequency:
    """Exact rational coordinate vector over an atom table."""

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, *coords: RationalLike) -> "Frequency":
        return cls(tuple(_fraction(c) for c in coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def scaled(self, factor: RationalLike) -> "Frequency":
        f = _fraction(factor)
        return Frequency(tuple(c * f for c in self.coords))


@dataclass(frozen=True)
class FrequencySet:
    """Ordered set of distinct frequencies.

    Order is significant: the natural basis depends on enumeration order,
    so no canonical re-sorting is ever applied.
    """

    freqs: tuple[Frequency, ...]

    def __post_init__(self):
        if self.freqs:
            width = len(self.freqs[0].coords)
            if any(len(f.coords) != width for f in self.freqs):
                raise ValueError("all frequencies must have the same coordinate length")
        if len({f.coords for f in self.freqs}) != len(self.freqs):
            raise ValueError("frequencies must be pairwise distinct")

    @classmethod
    def from_coords(cls, rows: Sequence[Sequence[RationalLike]]) -> "FrequencySet":
        return cls(tuple(Frequency(tuple(_fraction(c) for c in row)) for row in rows))

    def __len__(self) -> int:
        return len(self.freqs)

    def __iter__(self):
        return iter(self.freqs)

    def __getitem__(self, j: int) -> Frequency:
        return self.freqs[j]

    def prefix(self, n: int) -> "FrequencySet":
        return FrequencySet(self.freqs[:n])


@dataclass(frozen=True)
class BasisInfo:
    """A rational basis for a frequency set, with exact coordinates.

    ``coord_matrix`` row ``j`` expands the ``j``-th frequency of the
    originating set over ``basis``, exactly.  ``change_of_basis`` is the
    matrix ``T`` with ``coords_here = coords_natural @ T`` relative to the
    natural basis of the same set.  ``lcm_q`` is the least common multiple
    of all coordinate denominators.
    """

    basis: tuple[Frequency, ...]
    coord_matrix: tuple[tuple[Fraction, ...], ...]
    is_integral: bool
    lcm_q: int
    change_of_basis: Optional[tuple[tuple[Fraction, ...], ...]] = None
    column_scales: Optional[tuple[int, ...]] = None
    basis_indices: Optional[tuple[int, ...]] = None

    @property
    def size(self) -> int:
        return len(self.basis)

    def coord_rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self.coord_matrix]


def _expand_over(basis: Sequence[Frequency], target: Frequency) -> Optional[list[Fraction]]:
    """Coordinates of ``target`` over ``basis`` (columns = basis atoms view), or None."""
    width = len(target.coords)
    if not basis:
        return [] if target.is_zero else None
    a = [[basis[k].coords[i] for k in range(len(basis))] for i in range(width)]
    return exact.solve_rational(a, list(target.coords))


def natural_basis(freqs: FrequencySet) -> BasisInfo:
    """Greedy natural basis: walk the set in order, keeping each frequency
    that is rationally independent of the ones already kept.

    Zero frequencies are never basis members.  Basis members get a unit
    coordinate row; every other frequency expands over strictly earlier
    basis members.
    """
    if not freqs.freqs:
        raise EmptySetError("cannot build a basis for an empty frequency set")
    basis: list[Frequency] = []
    basis_indices: list[int] = []
    raw_rows: list[list[Fraction]] = []
    for j, lam in enumerate(freqs):
        coords = _expand_over(basis, lam)
        if coords is None:
            basis.append(lam)
            basis_indices.append(j)
            coords = [Fraction(0)] * (len(basis) - 1) + [Fraction(1)]
        raw_rows.append(coords)
    m = len(basis)
    rows = tuple(tuple(row + [Fraction(0)] * (m - len(row))) for row in raw_rows)
    q = lcm(*(c.denominator for row in rows for c in row), 1)
    ident = tuple(tuple(Fraction(1 if i == j else 0) for j in range(m)) for i in range(m))
    return BasisInfo(
        basis=tuple(basis),
        coord_matrix=rows,
        is_integral=(q == 1),
        lcm_q=q,
        change_of_basis=ident,
        basis_indices=tuple(basis_indices),
    )


def integralize(info: BasisInfo) -> BasisInfo:
    """Rescale each basis element by the lcm of its coordinate column's
    denominators, so that every coordinate becomes an integer.

    The rescaled basis spans the same rational space: ``g'_k = g_k / q_k``
    and coordinates pick up the factor ``q_k``.
    """
    m = len(info.basis)
    scales = []
    for k in range(m):
        scales.append(lcm(*(row[k].denominator for row in info.coord_matrix), 1))
    new_basis = tuple(g.scaled(Fraction(1, s)) for g, s in zip(info.basis, scales))
    new_rows = tuple(tuple(row[k] * scales[k] for k in range(m)) for row in info.coord_matrix)
    prev = info.change_of_basis
    if prev is not None:
        cob = tuple(tuple(prev[i][k] * scales[k] for k in range(m)) for i in range(len(prev)))
    else:
        cob = None
    return BasisInfo(
        basis=new_basis,
        coord_matrix=new_rows,
        is_integral=True,
        lcm_q=1,
        change_of_basis=cob,
        column_scales=tuple(scales),
        basis_indices=info.basis_indices,
    )


def change_of_basis(from_info: BasisInfo, to_info: BasisInfo) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix ``T`` with ``to.coord_matrix == from.coord_matrix @ T``.

    Row ``k`` of ``T`` expands the ``k``-th ``from`` basis element over the
    ``to`` basis.  Raises ``SpanMismatchError`` when the bases do not span
    the same rational space.
    """
    if len(from_info.basis) != len(to_info.basis):
        raise SpanMismatchError("bases have different sizes, so they cannot span the same space")
    t_rows = []
    for g in from_info.basis:
        coords = _expand_over(list(to_info.basis), g)
        if coords is None:
            raise SpanMismatchError("a basis element does not lie in the span of the target basis")
        # re-expansion check: g == sum of T-row coordinates times target basis
        for i in range(len(g.coords)):
            assert g.coords[i] == sum(c * h.coords[i] for c, h in zip(coords, to_info.basis))
        t_rows.append(coords)
    t = tuple(tuple(row) for row in t_rows)

    def implied(info: BasisInfo) -> list[tuple[Fraction, ...]]:
        width = len(info.basis[0].coords) if info.basis else 0
        return [
            tuple(sum(r * g.coords[i] for r, g in zip(row, info.basis)) for i in range(width))
            for row in info.coord_matrix
        ]

    # When both infos expand the same frequency list, the coordinate
    # matrices must agree under T.
    if len(from_info.coord_matrix) == len(to_info.coord_matrix) and implied(from_info) == implied(to_info):
        product = exact.mat_mul(from_info.coord_rows(), [list(r) for r in t])
        if [list(r) for r in to_info.coord_matrix] != product:
            raise SpanMismatchError("coordinate matrices are inconsistent under the computed change of basis")
    return t


def eval_numeric(freq: Frequency, atoms: AtomTable) -> float:
    """Numeric value (radians per unit time) of a frequency."""
    if len(freq.coords) != len(atoms.names):
        raise MissingAtomValueError("frequency coordinate length does not match the atom table")
    return float(sum(float(c) * atoms.numeric(name) for c, name in zip(freq.coords, atoms.names)))
