"""Independent brute-force oracles used by the test-suite."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from imean import bim, rook
from imean.exact import vertices
from imean.pbij import PartialBijection


def all_partial_bijections(n: int) -> list:
    """Every partial injection of ``range(n)``, by listing images (or None) pointwise."""
    out = []
    for images in product([None] + list(range(n)), repeat=n):
        used = [y for y in images if y is not None]
        if len(used) == len(set(used)):
            out.append(PartialBijection(n, [(x, y) for x, y in enumerate(images) if y is not None]))
    return out


@lru_cache(maxsize=None)
def all_submonoids(n: int) -> tuple:
    """Every Boolean inverse submonoid of I(n), grown one generator at a time."""
    universe = all_partial_bijections(n)
    start = bim.close(n, [])
    seen = {frozenset(start.elements): start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for x in universe:
                if x in S.elements:
                    continue
                T = bim.close(n, list(S.generators) + [x])
                key = frozenset(T.elements)
                if key not in seen:
                    seen[key] = T
                    nxt.append(T)
        frontier = nxt
    return tuple(seen.values())


def rank_d_related(e: int, f: int) -> bool:
    return bin(e).count("1") == bin(f).count("1")


def diagonal_d_brute(S, es, fs):
    """Search rook matrices entry by entry for ``A*A = Delta(es)``, ``AA* = Delta(fs)``.

    Whether a partial choice can be completed depends only on the cell index
    and the domains/ranges used so far, so failures are memoized.  Returns a
    verified matrix or ``None``.
    """
    k = len(es)
    cells = [(i, j) for i in range(k) for j in range(k)]
    elems = sorted(S.elements)
    cand = {
        (i, j): [s for s in elems if s.dom_mask & ~es[j] == 0 and s.ran_mask & ~fs[i] == 0]
        for i, j in cells
    }

    @lru_cache(maxsize=None)
    def go(c, cols, rows):
        if c == len(cells):
            return () if list(cols) == list(es) and list(rows) == list(fs) else None
        i, j = cells[c]
        for s in cand[(i, j)]:
            if s.dom_mask & cols[j] or s.ran_mask & rows[i]:
                continue
            nc = cols[:j] + (cols[j] | s.dom_mask,) + cols[j + 1:]
            nr = rows[:i] + (rows[i] | s.ran_mask,) + rows[i + 1:]
            rest = go(c + 1, nc, nr)
            if rest is not None:
                return (s,) + rest
        return None

    found = go(0, (0,) * k, (0,) * k)
    if found is None:
        return None
    A = rook.RookMatrix(S, k, k, {ij: s for ij, s in zip(cells, found)})
    E = rook.diag(S, [PartialBijection.partial_identity(S.n, e) for e in es])
    F = rook.diag(S, [PartialBijection.partial_identity(S.n, f) for f in fs])
    assert rook.validate(A) and rook.star(A) * A == E and A * rook.star(A) == F
    return A


def join_all(terms, n):
    g = {}
    for t in terms:
        for x, y in t.graph:
            assert g.get(x, y) == y
            g[x] = y
    return PartialBijection(n, g.items())


def triple_product(A, B, C):
    """``(ABC)_ij`` as the join of every ``a_ik b_kl c_lj``, without forming ``AB``."""
    n = A.base.n
    out = {}
    for i in range(A.rows):
        for j in range(C.cols):
            terms = [A[i, k] * B[k, l] * C[l, j] for k in range(A.cols) for l in range(B.cols)]
            x = join_all(terms, n)
            if not x.is_zero:
                out[(i, j)] = x
    return rook.RookMatrix(A.base, A.rows, C.cols, out)


def atom_level_vertices(S):
    """Vertices of {x >= 0 on atoms : x(d(s)) = x(r(s)) for all s, x(1) = 1}."""
    atoms = list(S.atoms)
    idx = {a: k for k, a in enumerate(atoms)}
    rows, rhs = [], []
    for s in S.elements:
        row = [0] * len(atoms)
        for a in S.atoms_below(s.dom_mask):
            row[idx[a]] += 1
        for a in S.atoms_below(s.ran_mask):
            row[idx[a]] -= 1
        if any(row):
            rows.append(row)
            rhs.append(0)
    rows.append([1] * len(atoms))
    rhs.append(1)
    verts, ok, _ = vertices(rows, rhs, cap=1000)
    return ok, {tuple(v) for v in verts}


def as_atom_vector(S, mu):
    return tuple(mu(a) for a in S.atoms)
