"""Rook matrices over a Boolean inverse monoid.

Entries may be any element type that supports ``*`` (composition),
``inverse()``, ``is_zero``, ``compatible``, ``join`` and ``leq``; in practice
:class:`~imean.pbij.PartialBijection` over a :class:`~imean.bim.FiniteBIM`, or
:class:`~imean.affine.AffineMap` over the affine monoid on the naturals.  The
base object only needs ``contains``, ``one`` and ``zero``.

Matrices are sparse: zero entries are never stored, so an ``omega x omega``
matrix is just a finitely supported one with ``rows = cols = OMEGA``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import bim
from .affine import AffineMap
from .bim import FiniteBIM
from .errors import (
    BaseMismatch,
    InternalInvariantViolation,
    NotBijective,
    NotOrthogonal,
    ShapeMismatch,
)
from .pbij import PartialBijection, SubsetIdempotent

OMEGA = "omega"


def _ranges_orthogonal(a, b) -> bool:
    return (a.inverse() * b).is_zero


def _domains_orthogonal(a, b) -> bool:
    return (a * b.inverse()).is_zero


def _check_dim(d, what):
    if d == OMEGA:
        return d
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ShapeMismatch(f"{what} must be a positive integer or 'omega', got {d!r}")
    return d


class RookMatrix:
    __slots__ = ("base", "rows", "cols", "entries")

    def __init__(self, base, rows, cols, entries=None):
        self.base = base
        self.rows = _check_dim(rows, "rows")
        self.cols = _check_dim(cols, "cols")
        if (rows == OMEGA) != (cols == OMEGA):
            raise ShapeMismatch("omega matrices must be omega on both sides")
        clean = {}
        for (i, j), x in dict(entries or {}).items():
            if i < 0 or j < 0 or (rows != OMEGA and i >= rows) or (cols != OMEGA and j >= cols):
                raise ShapeMismatch(f"entry ({i}, {j}) outside a {rows} x {cols} matrix")
            if not x.is_zero:
                clean[(i, j)] = x
        self.entries = clean

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        x = self.entries.get(ij)
        return self.base.zero if x is None else x

    def __eq__(self, other):
        if not isinstance(other, RookMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def __repr__(self):
        body = ", ".join(f"({i},{j}):{x!r}" for (i, j), x in sorted(self.entries.items()))
        return f"RookMatrix[{self.rows}x{self.cols}]{{{body}}}"

    def __mul__(self, other):
        return product(self, other)

    @property
    def support_bound(self) -> tuple:
        if not self.entries:
            return (0, 0)
        return (max(i for i, _ in self.entries) + 1, max(j for _, j in self.entries) + 1)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[i, j, x.to_json()] for (i, j), x in sorted(self.entries.items())],
        }


# -- constructors -------------------------------------------------------------

def identity(base, n: int) -> RookMatrix:
    return RookMatrix(base, n, n, {(i, i): base.one for i in range(n)})


def zeros(base, rows, cols) -> RookMatrix:
    return RookMatrix(base, rows, cols, {})


def diag(base, entries: Sequence, omega: bool = False) -> RookMatrix:
    """``Delta(a_1, ..., a_n)``; with ``omega=True`` the ``omega x omega`` version."""
    n = OMEGA if omega else len(entries)
    return RookMatrix(base, n, n, {(i, i): x for i, x in enumerate(entries)})


def from_rows(base, rows: Sequence[Sequence]) -> RookMatrix:
    m, n = len(rows), len(rows[0])
    return RookMatrix(base, m, n, {(i, j): x for i, row in enumerate(rows) for j, x in enumerate(row)})


# -- validity and algebra ----------------------------------------------------

def _by_row(A: RookMatrix) -> dict:
    out: dict = {}
    for (i, j), x in A.entries.items():
        out.setdefault(i, []).append(x)
    return out


def _by_col(A: RookMatrix) -> dict:
    out: dict = {}
    for (i, j), x in A.entries.items():
        out.setdefault(j, []).append(x)
    return out


def validate(A: RookMatrix) -> bool:
    """True iff RM1 (row ranges orthogonal), RM2 (column domains orthogonal), RM3 hold."""
    for x in A.entries.values():
        if not A.base.contains(x):
            raise BaseMismatch(f"entry {x!r} is not an element of the base monoid")
    for xs in _by_row(A).values():
        for k, a in enumerate(xs):
            if any(not _ranges_orthogonal(a, b) for b in xs[k + 1:]):
                return False
    for xs in _by_col(A).values():
        for k, a in enumerate(xs):
            if any(not _domains_orthogonal(a, b) for b in xs[k + 1:]):
                return False
    # RM3 holds by construction: only finitely many entries are stored
    return True


def _same_base(A, B):
    if A.base is not B.base:
        raise BaseMismatch("matrices are over different base monoids")


def product(A: RookMatrix, B: RookMatrix) -> RookMatrix:
    """``(AB)_ij = join over k of a_ik b_kj``."""
    _same_base(A, B)
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    rows_of_B: dict = {}
    for (k, j), b in B.entries.items():
        rows_of_B.setdefault(k, []).append((j, b))
    terms: dict = {}
    for (i, k), a in A.entries.items():
        for j, b in rows_of_B.get(k, ()):
            t = a * b
            if not t.is_zero:
                terms.setdefault((i, j), []).append(t)
    out = {}
    for ij, ts in terms.items():
        acc = ts[0]
        for k, t in enumerate(ts[1:], 1):
            for u in ts[:k]:
                if not (_ranges_orthogonal(u, t) and _domains_orthogonal(u, t)):
                    raise InternalInvariantViolation(f"non-orthogonal terms in product entry {ij}")
            acc = acc.join(t)
        out[ij] = acc
    return RookMatrix(A.base, A.rows, B.cols, out)


def star(A: RookMatrix) -> RookMatrix:
    return RookMatrix(A.base, A.cols, A.rows, {(j, i): x.inverse() for (i, j), x in A.entries.items()})


def leq(A: RookMatrix, B: RookMatrix) -> bool:
    _same_base(A, B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"shapes {A.shape} and {B.shape} differ")
    return all(x.leq(B[ij]) for ij, x in A.entries.items())


def orthogonal(A: RookMatrix, B: RookMatrix) -> bool:
    _same_base(A, B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"shapes {A.shape} and {B.shape} differ")
    for ij, x in A.entries.items():
        y = B.entries.get(ij)
        if y is not None and not (_ranges_orthogonal(x, y) and _domains_orthogonal(x, y)):
            return False
    return True


def join(A: RookMatrix, B: RookMatrix) -> RookMatrix:
    if not orthogonal(A, B):
        raise NotOrthogonal("matrices are not entrywise orthogonal")
    out = dict(A.entries)
    for ij, y in B.entries.items():
        out[ij] = out[ij].join(y) if ij in out else y
    return RookMatrix(A.base, A.rows, A.cols, out)


def matrix_order_join(A: RookMatrix, B: RookMatrix) -> dict:
    ortho = orthogonal(A, B)
    return {"leq": leq(A, B), "orthogonal": ortho, "join": join(A, B) if ortho else None}


def is_idempotent(A: RookMatrix) -> bool:
    return A.rows == A.cols and product(A, A) == A


def is_tarski(A: RookMatrix, m: int) -> bool:
    """``A`` is ``m x (m+1)`` with ``A* A`` the ``(m+1)``-identity."""
    if A.shape != (m, m + 1):
        raise ShapeMismatch(f"a Tarski matrix of degree {m} is {m} x {m + 1}, got {A.shape}")
    return validate(A) and product(star(A), A) == identity(A.base, m + 1)


def search_tarski_degree1(S: FiniteBIM) -> Optional[RookMatrix]:
    """Exhaustive search over all ``1 x 2`` matrices ``[a b]`` with entries in ``S``."""
    elems = sorted(S.elements)
    for a in elems:
        for b in elems:
            A = RookMatrix(S, 1, 2, {(0, 0): a, (0, 1): b})
            if validate(A) and is_tarski(A, 1):
                return A
    return None


def slide(base, idempotents: Sequence, r: int) -> RookMatrix:
    """The matrix moving ``Delta_w(e_1..e_m)`` to ``Delta_w(0^r, e_1..e_m)``."""
    return RookMatrix(base, OMEGA, OMEGA, {(r + i, i): e for i, e in enumerate(idempotents)})


# -- random matrices ----------------------------------------------------------

def random_rook(S: FiniteBIM, m: int, n: int, rng: random.Random, density: float = 0.6) -> RookMatrix:
    """A random valid ``m x n`` rook matrix over ``S``.

    Cells are filled in random order; each entry is a random element cut down
    to the domain still free in its column and the range still free in its row.
    """
    col_used = [0] * n
    row_used = [0] * m
    full = S.full_mask
    cells = [(i, j) for i in range(m) for j in range(n)]
    rng.shuffle(cells)
    entries = {}
    for i, j in cells:
        if rng.random() > density:
            continue
        s = bim.random_element(S, rng)
        s = s.restrict(full & ~col_used[j]).corestrict(full & ~row_used[i])
        if s.is_zero:
            continue
        entries[(i, j)] = s
        col_used[j] |= s.dom_mask
        row_used[i] |= s.ran_mask
    return RookMatrix(S, m, n, entries)


# -- rook matrices over I(X) as bijections of tagged unions ---------------------

@dataclass(frozen=True)
class TaggedUnion:
    """``X_0 x {0} u ... u X_{k-1} x {k-1}`` for subsets ``X_j`` of one ground set."""

    parts: tuple

    @property
    def points(self) -> frozenset:
        return frozenset((x, j) for j, part in enumerate(self.parts) for x in part.members)

    def __len__(self):
        return len(self.parts)


def rook_to_bijection(A: RookMatrix) -> tuple:
    """``(X, Y, f)`` with ``f(x, j) = (a_ij(x), i)`` a bijection from columns to rows."""
    if A.rows == OMEGA:
        raise ShapeMismatch("only finite rook matrices convert to tagged bijections")
    n = A.base.n
    dom = [0] * A.cols
    ran = [0] * A.rows
    f = {}
    for (i, j), a in A.entries.items():
        dom[j] |= a.dom_mask
        ran[i] |= a.ran_mask
        for x, y in a.graph:
            if (x, j) in f:
                raise InternalInvariantViolation("column domains overlap")
            f[(x, j)] = (y, i)
    X = TaggedUnion(tuple(SubsetIdempotent.from_mask(n, d) for d in dom))
    Y = TaggedUnion(tuple(SubsetIdempotent.from_mask(n, r) for r in ran))
    return X, Y, f


def bijection_to_rook(X: TaggedUnion, Y: TaggedUnion, f: dict, base) -> RookMatrix:
    """Cut a bijection of tagged unions into the ``len(Y) x len(X)`` matrix of its pieces."""
    src, dst = X.points, Y.points
    if set(f) != src or set(f.values()) != dst or len(src) != len(dst):
        raise NotBijective("f is not a bijection between the given tagged unions")
    cells: dict = {}
    for (x, j), (y, i) in f.items():
        cells.setdefault((i, j), []).append((x, y))
    n = base.n
    A = RookMatrix(base, len(Y), len(X), {ij: PartialBijection(n, g) for ij, g in cells.items()})
    if not validate(A):
        raise InternalInvariantViolation("pieces of a bijection failed RM1/RM2")
    return A


# -- D-relation of diagonal idempotents in M_k(S) -----------------------------

def diagonal_d_witness(S: FiniteBIM, es: Sequence, fs: Sequence) -> Optional[RookMatrix]:
    """A ``k x k`` rook matrix ``A`` with ``A*A = Delta(es)`` and ``AA* = Delta(fs)``.

    Every witness can be cut into pieces whose domains are atoms, so the search
    assigns each (column, atom below e_j) to a distinct (row, atom below f_i)
    reachable by some element of ``S``.  Failed partial states are memoized on
    the set of used targets, which keeps the search exhaustive but small.
    """
    es = [bim.as_mask(S, e) for e in es]
    fs = [bim.as_mask(S, f) for f in fs]
    if len(es) != len(fs):
        raise ShapeMismatch("diagonals of different length")
    k = len(es)
    sources = [(j, a) for j, e in enumerate(es) for a in S.atoms_below(e)]
    targets = [(i, b) for i, f in enumerate(fs) for b in S.atoms_below(f)]
    if len(sources) != len(targets):
        return None
    options = [
        [t for t, (i, b) in enumerate(targets) if S.d_witness(a, b) is not None]
        for (j, a) in sources
    ]

    @lru_cache(maxsize=None)
    def search(pos: int, used: int):
        if pos == len(sources):
            return ()
        for t in options[pos]:
            if not (used >> t) & 1:
                rest = search(pos + 1, used | (1 << t))
                if rest is not None:
                    return (t,) + rest
        return None

    choice = search(0, 0)
    search.cache_clear()
    if choice is None:
        return None
    cells: dict = {}
    for (j, a), t in zip(sources, choice):
        i, b = targets[t]
        piece = S.d_witness(a, b)
        cells[(i, j)] = cells[(i, j)].join(piece) if (i, j) in cells else piece
    A = RookMatrix(S, k, k, cells)
    zero = S.zero
    E = diag(S, [PartialBijection.partial_identity(S.n, e) if e else zero for e in es])
    F = diag(S, [PartialBijection.partial_identity(S.n, f) if f else zero for f in fs])
    if not validate(A) or product(star(A), A) != E or product(A, star(A)) != F:
        raise InternalInvariantViolation("assembled diagonal witness does not verify")
    return A


def all_rook_matrices(S: FiniteBIM, m: int, n: int) -> Iterable[RookMatrix]:
    """Every valid ``m x n`` rook matrix over ``S`` (tiny cases only)."""
    elems = sorted(S.elements)
    cells = [(i, j) for i in range(m) for j in range(n)]

    def rec(k, entries, col_dom, row_ran):
        if k == len(cells):
            yield RookMatrix(S, m, n, entries)
            return
        i, j = cells[k]
        for s in elems:
            if s.dom_mask & col_dom[j] or s.ran_mask & row_ran[i]:
                continue
            entries[(i, j)] = s
            col_dom[j] ^= s.dom_mask
            row_ran[i] ^= s.ran_mask
            yield from rec(k + 1, entries, col_dom, row_ran)
            col_dom[j] ^= s.dom_mask
            row_ran[i] ^= s.ran_mask
            del entries[(i, j)]

    yield from rec(0, {}, [0] * n, [0] * m)


def from_json(obj: dict, base) -> RookMatrix:
    rows = obj["rows"]
    cols = obj["cols"]
    entries = {}
    for i, j, x in obj["entries"]:
        if isinstance(x, dict) and "pieces" in x:
            x = AffineMap.from_json(x)
        elif isinstance(x, dict):
            x = PartialBijection.from_json({"ground": x.get("ground", base.n), "graph": x["graph"]})
        else:
            x = PartialBijection(base.n, [tuple(p) for p in x])
        entries[(int(i), int(j))] = x
    return RookMatrix(base, rows, cols, entries)
