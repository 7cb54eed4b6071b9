"""Exponential sums, exact Bohr-equivalence decisions, and witnesses.

Phases are stored in turns (1 turn = 2*pi radians), so "rational multiple
of 2*pi" becomes simply "rational number" and the phase congruences behind
equivalence turn into exact integer lattice problems: two sums over the
same frequency set are equivalent iff the phase-delta vector theta solves
``R @ x = theta (mod 1)`` for some real x, with R the coordinate matrix of
the frequencies over a basis.  Feasibility of that congruence system is
decided exactly through the saturated integer left kernel of R.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import exact
from .errors import (
    NonExactPhasesError,
    NotEquivalentInputError,
    SpectrumMismatchError,
)
from .freq import AtomTable, BasisInfo, FrequencySet, eval_numeric, integralize, natural_basis

TWO_PI = 2.0 * math.pi


def phase_distance(x: float, y: float) -> float:
    """Distance between two phases in turns, on the circle."""
    d = abs(x - y) % 1.0
    return min(d, 1.0 - d)


@dataclass(frozen=True)
class PhaseTurns:
    """A phase in turns, normalized to [0, 1).

    ``exact`` is present when the phase is known as a rational number of
    turns; ``approx`` always carries the float image.
    """

    exact: Optional[Fraction]
    approx: float

    def __post_init__(self):
        if not 0.0 <= self.approx < 1.0:
            raise ValueError("approx phase must lie in [0, 1)")
        if self.exact is not None:
            if not 0 <= self.exact < 1:
                raise ValueError("exact phase must be reduced into [0, 1)")
            if abs(self.approx - float(self.exact)) > 1e-15:
                raise ValueError("approx phase inconsistent with exact phase")

    @classmethod
    def from_fraction(cls, value) -> "PhaseTurns":
        f = Fraction(value) % 1
        return cls(exact=f, approx=float(f))

    @classmethod
    def from_float(cls, value: float) -> "PhaseTurns":
        return cls(exact=None, approx=float(value) % 1.0)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


def _as_phase(value: Union["PhaseTurns", Fraction, int, str, float]) -> PhaseTurns:
    if isinstance(value, PhaseTurns):
        return value
    if isinstance(value, (Fraction, int, str)):
        return PhaseTurns.from_fraction(value)
    return PhaseTurns.from_float(value)


@dataclass(frozen=True)
class Coefficient:
    """Polar complex coefficient: nonnegative modulus and a phase in turns."""

    modulus: float
    phase: PhaseTurns

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        if self.modulus == 0 and (self.phase.exact != 0 or self.phase.approx != 0.0):
            object.__setattr__(self, "phase", PhaseTurns.from_fraction(0))

    @classmethod
    def make(cls, modulus: float, phase=Fraction(0)) -> "Coefficient":
        return cls(float(modulus), _as_phase(phase))

    @classmethod
    def zero(cls) -> "Coefficient":
        return cls(0.0, PhaseTurns.from_fraction(0))

    @property
    def complex_value(self) -> complex:
        return self.modulus * cmath.exp(1j * TWO_PI * self.phase.approx)

    @property
    def energy(self) -> float:
        return self.modulus * self.modulus


@dataclass(frozen=True)
class ExponentialSum:
    """Finite list of (frequency, coefficient) pairs plus a tail-energy scalar.

    ``tail_energy`` holds the sum of squared moduli beyond the stored
    prefix; zero identifies a true trigonometric polynomial.
    """

    freqs: FrequencySet
    coeffs: tuple[Coefficient, ...]
    tail_energy: float = 0.0

    def __post_init__(self):
        if len(self.freqs) != len(self.coeffs):
            raise ValueError("coefficient count must match frequency count")
        if self.tail_energy < 0:
            raise ValueError("tail energy must be nonnegative")

    @classmethod
    def make(cls, coords: Sequence[Sequence], coefficients: Sequence[tuple], tail_energy: float = 0.0) -> "ExponentialSum":
        """Convenience constructor from coordinate rows and (modulus, phase) pairs."""
        return cls(
            FrequencySet.from_coords(coords),
            tuple(Coefficient.make(m, p) for m, p in coefficients),
            float(tail_energy),
        )

    @classmethod
    def zero(cls) -> "ExponentialSum":
        return cls(FrequencySet(()), (), 0.0)

    @property
    def is_polynomial(self) -> bool:
        return self.tail_energy == 0.0

    @property
    def has_exact_phases(self) -> bool:
        return all(c.modulus == 0 or c.phase.is_exact for c in self.coeffs)

    def prefix(self, n: int) -> "ExponentialSum":
        """The n-term prefix as a polynomial (tail dropped)."""
        return ExponentialSum(self.freqs.prefix(n), self.coeffs[:n], 0.0)

    def evaluate(self, t, atoms: AtomTable):
        """Time-domain value of the stored prefix; accepts scalars or arrays."""
        lams = np.array([eval_numeric(f, atoms) for f in self.freqs])
        cs = np.array([c.complex_value for c in self.coeffs])
        tarr = np.asarray(t, dtype=float)
        values = np.exp(1j * np.multiply.outer(tarr, lams)) @ cs
        if np.ndim(t) == 0:
            return complex(values)
        return values


@dataclass(frozen=True)
class Witness:
    """Phase vector (turns) certifying equivalence over ``basis_ref``.

    For every ``j < prefix_n`` with a nonzero coefficient,
    ``phase(b_j) - phase(a_j) == <r_j, x> (mod 1)`` exactly, where ``r_j``
    is row ``j`` of ``basis_ref.coord_matrix``.
    """

    x: tuple[PhaseTurns, ...]
    basis_ref: BasisInfo
    prefix_n: int

    def x_fractions(self) -> list[Fraction]:
        return [p.exact if p.exact is not None else Fraction(p.approx).limit_denominator(10**12) for p in self.x]


@dataclass(frozen=True)
class Obstruction:
    """Why two sums are not equivalent.

    Either a modulus mismatch at ``index``, or an integer relation ``u``
    vanishing on the frequency coordinates with ``u . theta`` not an
    integer (``value`` holds ``u . theta``).
    """

    kind: str  # "modulus" | "phase_relation"
    index: Optional[int] = None
    relation: Optional[tuple[int, ...]] = None
    value: Optional[Fraction] = None


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str  # "equivalent" | "not_equivalent" | "undecidable"
    witnesses: tuple[Witness, ...] = ()
    obstruction: Optional[Obstruction] = None
    reason: Optional[str] = None
    residual: Optional[float] = None
    mode: str = "exact"

    @property
    def is_equivalent(self) -> bool:
        return self.status == "equivalent"


def _require_same_spectrum(a: ExponentialSum, b: ExponentialSum) -> None:
    if [f.coords for f in a.freqs] != [f.coords for f in b.freqs]:
        raise SpectrumMismatchError("sums must share the same ordered frequency set")


# ---------------------------------------------------------------------------
# Exact congruence systems R @ x = theta (mod 1)
# ---------------------------------------------------------------------------


def _system_solution_data(rows: list[list[Fraction]], theta: list[Fraction]):
    """Solve ``rows @ x = theta + k`` for real x and integer k.

    Returns ``(x_particular, null_basis, lattice_preimages)`` on success or
    ``(None, u, None)`` with ``u`` an integer obstruction row satisfying
    ``u @ rows == 0`` and ``u . theta`` not an integer.
    """
    n = len(rows)
    kernel = exact.left_kernel_basis(rows) if n else []
    for u in kernel:
        dot = sum(Fraction(ui) * ti for ui, ti in zip(u, theta))
        if dot.denominator != 1:
            return None, u, None
    if kernel:
        target = [-int(sum(Fraction(ui) * ti for ui, ti in zip(u, theta))) for u in kernel]
        k = exact.lattice_membership(kernel, target)
        # The left-kernel basis is saturated, so membership cannot fail here.
        assert k is not None
    else:
        k = [0] * n
    x_part = exact.solve_rational(rows, [t + ki for t, ki in zip(theta, k)])
    assert x_part is not None
    null_basis = exact.right_kernel_basis(rows)
    if kernel:
        lattice_vectors = exact.left_kernel_basis(exact.transpose(kernel))
    else:
        lattice_vectors = exact.identity(n)
    preimages = []
    for v in lattice_vectors:
        pre = exact.solve_rational(rows, list(v))
        assert pre is not None
        preimages.append(pre)
    return x_part, null_basis, preimages


def _lex_min_solution(rows: list[list[Fraction]], theta: list[Fraction], m: int) -> Optional[list[Fraction]]:
    """Lexicographically minimal x in [0,1)^m with ``rows @ x = theta (mod 1)``.

    Requires integral coordinate rows (so the solution set is periodic under
    integer shifts of every coordinate).  Returns None when infeasible.
    """
    cur_rows = [list(r) for r in rows]
    cur_theta = list(theta)
    x: list[Fraction] = []
    for col in range(m):
        x_part, null_basis, preimages = _system_solution_data(cur_rows, cur_theta)
        if x_part is None:
            return None
        if any(w[0] != 0 for w in null_basis):
            value = Fraction(0)
        else:
            gens = [pre[0] for pre in preimages] + [Fraction(1)]
            g = exact.fraction_gcd(gens)
            value = x_part[0] % g
        x.append(value)
        cur_theta = [t - r[0] * value for t, r in zip(cur_theta, cur_rows)]
        cur_rows = [r[1:] for r in cur_rows]
    return x


def _decide_system(rows: list[list[Fraction]], theta: list[Fraction], m: int):
    """Feasibility + lex-min witness for an integral congruence system."""
    probe, u, _ = _system_solution_data(rows, theta)
    if probe is None:
        return None, u
    x = _lex_min_solution(rows, theta, m)
    assert x is not None
    for r, t in zip(rows, theta):
        assert (sum(ri * xi for ri, xi in zip(r, x)) - t).denominator == 1
    return x, None


def _phase_deltas_exact(a: ExponentialSum, b: ExponentialSum) -> dict[int, Fraction]:
    deltas = {}
    for j, (ca, cb) in enumerate(zip(a.coeffs, b.coeffs)):
        if ca.modulus == 0:
            continue
        if not (ca.phase.is_exact and cb.phase.is_exact):
            raise NonExactPhasesError(f"coefficient {j} has an approximate phase; use tolerance mode")
        deltas[j] = (cb.phase.exact - ca.phase.exact) % 1
    return deltas


def _modulus_obstruction(a: ExponentialSum, b: ExponentialSum) -> Optional[Obstruction]:
    for j, (ca, cb) in enumerate(zip(a.coeffs, b.coeffs)):
        if ca.modulus != cb.modulus:
            return Obstruction(kind="modulus", index=j)
    return None


def _embed_relation(u: Sequence[int], active: Sequence[int], total: int) -> tuple[int, ...]:
    full = [0] * total
    for coeff, j in zip(u, active):
        full[j] = int(coeff)
    return tuple(full)


def _decide_exact(a: ExponentialSum, b: ExponentialSum, mode: str) -> EquivalenceVerdict:
    deltas = _phase_deltas_exact(a, b)
    nat = natural_basis(a.freqs)
    integral = nat if nat.is_integral else integralize(nat)
    m = integral.size
    coord_rows = integral.coord_rows()
    total = len(a.freqs)

    def prefix_verdict(n: int):
        active = [j for j in sorted(deltas) if j < n]
        rows = [coord_rows[j] for j in active]
        theta = [deltas[j] for j in active]
        x, u = _decide_system(rows, theta, m)
        if x is None:
            return None, Obstruction(
                kind="phase_relation",
                relation=_embed_relation(u, active, total),
                value=sum(Fraction(ui) * deltas[j] for ui, j in zip(u, active)),
            )
        return Witness(tuple(PhaseTurns.from_fraction(v) for v in x), integral, n), None

    # Feasibility of the full system decides every prefix at once.
    full_witness, obstruction = prefix_verdict(total)
    if obstruction is not None:
        return EquivalenceVerdict(status="not_equivalent", obstruction=obstruction, mode=mode)
    if nat.is_integral:
        witnesses = (full_witness,)
    else:
        witnesses = tuple(prefix_verdict(n)[0] for n in range(1, total)) + (full_witness,)
    return EquivalenceVerdict(status="equivalent", witnesses=witnesses, mode=mode)


def decide_equivalence(
    a: ExponentialSum,
    b: ExponentialSum,
    mode: str = "exact",
    *,
    eps_phase: float = 1e-9,
    max_denominator: int = 10**6,
) -> EquivalenceVerdict:
    """Decide Bohr equivalence of two sums over the same frequency set.

    Exact mode requires rational phases and answers with no tolerance: the
    verdict is Equivalent with witnesses, or NotEquivalent with either the
    modulus-mismatch index or an integer relation ``u`` that annihilates the
    frequency coordinates while ``u . theta`` is not an integer.

    Over an integral natural basis a single witness certifies every stored
    term; otherwise one witness per prefix length is returned, each
    expressed over the integralized companion basis (the natural basis
    rescaled so all coordinates are integers), which keeps witness entries
    inside [0, 1) turns.  Witnesses are canonical: lexicographically
    minimal in [0, 1)^m.

    Tolerance mode first snaps the phase deltas to rationals with
    denominator at most ``max_denominator`` (best bounded-denominator
    approximation, Stern-Brocot style) and then decides that rationalized
    system exactly.  The verdict degrades to Undecidable when it sits
    within ``eps_phase`` turns of the decision boundary: an Equivalent
    verdict whose rationalization residual exceeds ``eps_phase``, or a
    NotEquivalent verdict whose violated relation clears integrality by
    less than the propagated rationalization slack plus ``eps_phase``.
    """
    _require_same_spectrum(a, b)
    if mode not in ("exact", "tolerance"):
        raise ValueError("mode must be 'exact' or 'tolerance'")
    mismatch = _modulus_obstruction(a, b)
    if mismatch is not None:
        return EquivalenceVerdict(status="not_equivalent", obstruction=mismatch, mode=mode)
    if mode == "exact":
        return _decide_exact(a, b, mode)

    # Tolerance mode: rationalize, then reuse the exact engine.
    residuals = {}
    snapped = []
    for j, (ca, cb) in enumerate(zip(a.coeffs, b.coeffs)):
        if ca.modulus == 0:
            snapped.append(Coefficient.zero())
            continue
        delta = (cb.phase.approx - ca.phase.approx) % 1.0
        frac = Fraction(delta).limit_denominator(max_denominator) % 1
        residuals[j] = phase_distance(delta, float(frac))
        snapped.append(Coefficient.make(ca.modulus, (ca.phase.exact or Fraction(0)) + frac))
    a_exact = ExponentialSum(
        a.freqs,
        tuple(Coefficient.make(c.modulus, c.phase.exact or Fraction(0)) for c in a.coeffs),
        a.tail_energy,
    )
    b_snapped = ExponentialSum(a.freqs, tuple(snapped), b.tail_energy)
    verdict = _decide_exact(a_exact, b_snapped, "tolerance")
    worst = max(residuals.values(), default=0.0)
    if verdict.status == "equivalent":
        if worst > eps_phase:
            return EquivalenceVerdict(
                status="undecidable",
                reason="rationalization residual exceeds eps_phase",
                residual=worst,
                mode="tolerance",
            )
        return EquivalenceVerdict(
            status="equivalent", witnesses=verdict.witnesses, residual=worst, mode="tolerance"
        )
    obstruction = verdict.obstruction
    if obstruction.kind == "phase_relation":
        frac_part = obstruction.value % 1
        clearance = float(min(frac_part, 1 - frac_part))
        slack = sum(abs(ui) * residuals.get(j, 0.0) for j, ui in enumerate(obstruction.relation))
        if clearance <= slack + eps_phase:
            return EquivalenceVerdict(
                status="undecidable",
                reason="violated relation is within rationalization slack of an integer",
                residual=worst,
                mode="tolerance",
            )
    return EquivalenceVerdict(
        status="not_equivalent", obstruction=obstruction, residual=worst, mode="tolerance"
    )


def witness_natural_form(a: ExponentialSum, b: ExponentialSum):
    """Single witness over the natural basis plus integer lattice shifts.

    Returns ``(x0, shifts)`` where ``x0`` is a witness with entries in
    [0, 1) turns over the *natural* basis and ``shifts[j]`` is an integer
    vector ``p_j`` such that ``phase(b_j) - phase(a_j) == <r_j, x0 + p_j>
    (mod 1)`` exactly, with ``p_j = 0`` whenever the j-th frequency is
    itself a basis element.
    """
    verdict = decide_equivalence(a, b, mode="exact")
    if not verdict.is_equivalent:
        raise NotEquivalentInputError("witness_natural_form requires equivalent sums")
    full = verdict.witnesses[-1]
    nat = natural_basis(a.freqs)
    scales = full.basis_ref.column_scales or tuple([1] * nat.size)
    y = [s * p.exact for s, p in zip(scales, full.x)]
    x0 = [v % 1 for v in y]
    carry = [int(v - r) for v, r in zip(y, x0)]
    basis_members = set(nat.basis_indices or ())
    shifts = []
    deltas = _phase_deltas_exact(a, b)
    for j in range(len(a.freqs)):
        p_j = [0] * nat.size if j in basis_members else list(carry)
        shifts.append(tuple(p_j))
        if j in deltas:
            lhs = sum(r * (x + p) for r, x, p in zip(nat.coord_matrix[j], x0, p_j))
            assert (lhs - deltas[j]).denominator == 1
    witness = Witness(tuple(PhaseTurns.from_fraction(v) for v in x0), nat, len(a.freqs))
    return witness, shifts


def translate(f: ExponentialSum, tau: float, atoms: AtomTable) -> ExponentialSum:
    """The translate ``f(t + tau)``: each coefficient picks up ``e^{i lambda tau}``.

    Moduli and tail energy are unchanged.  Exact phases survive only for
    ``tau == 0``; otherwise phases become approximate.
    """
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    if tau == 0:
        return f
    coeffs = []
    for freq, c in zip(f.freqs, f.coeffs):
        if c.modulus == 0:
            coeffs.append(Coefficient.zero())
            continue
        shift = eval_numeric(freq, atoms) * tau / TWO_PI
        coeffs.append(Coefficient(c.modulus, PhaseTurns.from_float(c.phase.approx + shift)))
    return ExponentialSum(f.freqs, tuple(coeffs), f.tail_energy)


def sample_equivalent(f: ExponentialSum, seed: int) -> ExponentialSum:
    """Draw a uniformly random member of the equivalence class of ``f``.

    The phase vector x is drawn on [0,1)^m with denominator 2**16 over the
    integralized natural basis, so sampled phases stay exact whenever the
    input phases are exact, and ``decide_equivalence(f, result)`` is
    Equivalent by construction.
    """
    info = natural_basis(f.freqs)
    if not info.is_integral:
        info = integralize(info)
    rng = random.Random(seed)
    x = [Fraction(rng.randrange(2**16), 2**16) for _ in range(info.size)]
    coeffs = []
    for row, c in zip(info.coord_matrix, f.coeffs):
        if c.modulus == 0:
            coeffs.append(Coefficient.zero())
            continue
        inc = sum(r * xi for r, xi in zip(row, x))
        if c.phase.is_exact:
            coeffs.append(Coefficient.make(c.modulus, c.phase.exact + inc))
        else:
            coeffs.append(Coefficient(c.modulus, PhaseTurns.from_float(c.phase.approx + float(inc))))
    return ExponentialSum(f.freqs, tuple(coeffs), f.tail_energy)


def deviation(a: ExponentialSum, b: ExponentialSum, atoms: AtomTable, tau: float) -> float:
    """The translation objective ``D(tau) = sum_j |a_j e^{i lambda_j tau} - b_j|``."""
    _require_same_spectrum(a, b)
    total = 0.0
    for freq, ca, cb in zip(a.freqs, a.coeffs, b.coeffs):
        lam = eval_numeric(freq, atoms)
        total += abs(ca.complex_value * cmath.exp(1j * lam * tau) - cb.complex_value)
    return total
