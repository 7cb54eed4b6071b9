"""Exact integer and rational matrix algebra.

This is the decision engine underneath the equivalence machinery: Hermite
normal forms with unimodular transforms, saturated integer left-kernel
bases, lattice membership, and rational linear solving.  Everything here is
computed with arbitrary-precision ``int`` / ``Fraction`` arithmetic; no
floating point enters this module.

Matrices are plain nested lists.  ``IntMatrix`` rows hold Python ints,
``RatMatrix`` rows hold ``Fraction`` (ints are accepted and coerced).  All
functions treat their inputs as immutable and return fresh lists.

Conventions
-----------
The Hermite normal form used throughout is row-style: ``hnf(M)`` returns
``(H, U)`` with ``H = U @ M``, ``U`` unimodular, pivots positive, entries
above each pivot reduced into ``[0, pivot)``, and zero rows at the bottom.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def _check_rectangular(m: Sequence[Sequence]) -> tuple[int, int]:
    if not m:
        raise ValueError("matrix must have at least one row")
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise ValueError("matrix must be rectangular")
    return len(m), cols


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Exact matrix product (works for int and Fraction entries)."""
    ra, ca = _check_rectangular(a)
    rb, cb = _check_rectangular(b)
    if ca != rb:
        raise ValueError(f"shape mismatch: {ra}x{ca} @ {rb}x{cb}")
    return [[sum(a[i][k] * b[k][j] for k in range(ca)) for j in range(cb)] for i in range(ra)]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    ra, ca = _check_rectangular(a)
    if len(v) != ca:
        raise ValueError("vector length does not match column count")
    return [sum(a[i][k] * v[k] for k in range(ca)) for i in range(ra)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    _check_rectangular(m)
    return [list(col) for col in zip(*m)]


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant via fraction-free-style elimination over Q."""
    n, cols = _check_rectangular(m)
    if n != cols:
        raise ValueError("determinant requires a square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        result *= a[col][col]
        inv = a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                factor = a[i][col] / inv
                a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    return sign * result


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form with transform.

    Returns ``(H, U)`` with ``H = U @ m`` and ``|det U| = 1``.  Pivot entries
    are positive, entries above each pivot are reduced into ``[0, pivot)``,
    pivot columns strictly increase, and zero rows sit at the bottom.
    """
    rows, cols = _check_rectangular(m)
    h = [[int(x) for x in row] for row in m]
    u = identity(rows)
    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        # Euclidean reduction of the entries at and below pivot_row.
        while True:
            nonzero = [i for i in range(pivot_row, rows) if h[i][col] != 0]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: abs(h[i][col]))
            if best != pivot_row:
                h[pivot_row], h[best] = h[best], h[pivot_row]
                u[pivot_row], u[best] = u[best], u[pivot_row]
            done = True
            for i in range(pivot_row + 1, rows):
                if h[i][col] != 0:
                    q = h[i][col] // h[pivot_row][col]
                    h[i] = [x - q * y for x, y in zip(h[i], h[pivot_row])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if h[pivot_row][col] == 0:
            continue
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        pivot = h[pivot_row][col]
        for i in range(pivot_row):
            q = h[i][col] // pivot
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[pivot_row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivot_row += 1
    return h, u


def _pivot_columns(h: IntMatrix) -> list[int]:
    pivots = []
    for row in h:
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is not None:
            pivots.append(col)
    return pivots


def rank(m: Sequence[Sequence]) -> int:
    """Rank over Q."""
    rows, cols = _check_rectangular(m)
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][col]
        for i in range(r + 1, rows):
            if a[i][col] != 0:
                factor = a[i][col] / inv
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def left_kernel_basis(m: Sequence[Sequence]) -> IntMatrix:
    """Basis of the saturated integer left-kernel lattice of a rational matrix.

    Returns a full-rank integer matrix whose rows generate
    ``{u in Z^rows : u @ m = 0}`` (all integer points of the rational left
    kernel, not merely a finite-index sublattice).  Returns a 0-row matrix
    when the rational left kernel is trivial.
    """
    rows, cols = _check_rectangular(m)
    # Global scaling to integers preserves the left kernel.
    scale = lcm(*(Fraction(x).denominator for row in m for x in row), 1)
    mi = [[int(Fraction(x) * scale) for x in row] for row in m]
    h, u = hnf(mi)
    kernel_rows = [u[i] for i in range(rows) if all(x == 0 for x in h[i])]
    return kernel_rows


def lattice_membership(u: IntMatrix, z: Sequence[int]) -> Optional[list[int]]:
    """Solve ``u @ k = z`` over the integers.

    Returns some ``k`` in ``Z^cols`` when one exists, ``None`` otherwise.
    The decision is exact, via the Hermite normal form of ``u`` transposed.
    """
    if not u:
        return None if any(z) else []
    rows, cols = _check_rectangular(u)
    if len(z) != rows:
        raise ValueError("target length must equal the row count")
    z = [int(x) for x in z]
    # H = W @ u^T, W unimodular.  u @ k = z  <=>  H^T y = z with k = W^T y.
    h, w = hnf(transpose(u))
    pivots = _pivot_columns(h)
    y = [0] * cols
    for t, col in enumerate(pivots):
        acc = z[col] - sum(h[j][col] * y[j] for j in range(t))
        pivot = h[t][col]
        if acc % pivot != 0:
            return None
        y[t] = acc // pivot
    # Consistency of the non-pivot equations.
    for i in range(rows):
        if i not in pivots:
            if sum(h[j][i] * y[j] for j in range(len(pivots))) != z[i]:
                return None
    wt = transpose(w)
    k = [sum(wt[i][j] * y[j] for j in range(cols)) for i in range(cols)]
    assert mat_vec(u, k) == z
    return k


def solve_rational(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Exact solution of ``a @ x = b`` over Q, or ``None`` if inconsistent.

    Free variables are set to zero, so the returned solution is the canonical
    echelon particular solution.
    """
    rows, cols = _check_rectangular(a)
    if len(b) != rows:
        raise ValueError("right-hand side length must equal the row count")
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for row, col in pivots:
        x[col] = aug[row][cols]
    return x


def right_kernel_basis(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the rational null space ``{x : a @ x = 0}``."""
    rows, cols = _check_rectangular(a)
    red = [[Fraction(x) for x in row] for row in a]
    pivot_cols: list[int] = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if red[i][col] != 0), None)
        if pivot is None:
            continue
        red[r], red[pivot] = red[pivot], red[r]
        inv = red[r][col]
        red[r] = [x / inv for x in red[r]]
        for i in range(rows):
            if i != r and red[i][col] != 0:
                factor = red[i][col]
                red[i] = [x - factor * y for x, y in zip(red[i], red[r])]
        pivot_cols.append(col)
        r += 1
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for row, col in zip(range(r), pivot_cols):
            vec[col] = -red[row][free]
        basis.append(vec)
    return basis


def fraction_gcd(values: Sequence[Fraction]) -> Fraction:
    """Positive generator of the additive subgroup of Q generated by ``values``.

    ``gcd(p1/q1, p2/q2) = gcd(p1*l/q1, p2*l/q2) / l`` with ``l = lcm(q1, q2)``.
    Zero inputs are ignored; all-zero input returns 0.
    """
    nonzero = [Fraction(v) for v in values if v != 0]
    if not nonzero:
        return Fraction(0)
    denom = lcm(*(v.denominator for v in nonzero))
    num = gcd(*(abs(int(v * denom)) for v in nonzero))
    return Fraction(num, denom)
