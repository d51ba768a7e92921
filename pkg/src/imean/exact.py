"""Exact rational linear algebra for small systems ``A x = b, x >= 0``."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence


def frac(x) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve_square(A: Sequence[Sequence], b: Sequence):
    """Unique solution of a square system, or ``None`` if singular."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    red, piv = rref(aug)
    if piv != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def vertices(A: Sequence[Sequence], b: Sequence, cap: int = 64) -> tuple[list, bool, bool]:
    """Vertices of ``{x >= 0 : A x = b}`` by basis enumeration.

    Returns ``(vertices, feasible_system, truncated)``; ``feasible_system`` is
    False when ``A x = b`` has no solution at all, ignoring sign.
    """
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return [], False, False
    rows = [row[:ncols] for row in red]
    rhs = [row[ncols] for row in red]
    r = len(rows)
    found: list = []
    seen = set()
    for basis in combinations(range(ncols), r):
        sub = [[row[j] for j in basis] for row in rows]
        xb = solve_square(sub, rhs) if r else []
        if xb is None or any(v < 0 for v in xb):
            continue
        x = [Fraction(0)] * ncols
        for j, v in zip(basis, xb):
            x[j] = v
        key = tuple(x)
        if key not in seen:
            seen.add(key)
            found.append(x)
            if len(found) > cap:
                return found[:cap], True, True
    return found, True, False


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0
