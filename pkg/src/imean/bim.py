"""Finite Boolean inverse monoids realized inside a symmetric inverse monoid I(n).

Two realizations share one interface:

* :func:`close` computes an explicit element set from generators;
* :func:`semisimple` describes ``I_{n1} x ... x I_{nk}`` block-diagonally and
  answers every structural query from block ranks, so levels with many
  elements (``I_8`` has about 1.4 million) stay cheap.  Elements are only
  enumerated when somebody asks for them.

Idempotents are handled as bitmasks over the ground set throughout; public
functions also accept :class:`SubsetIdempotent` or idempotent
:class:`PartialBijection` values.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, GroundMismatch, ImeanError, NotAnElement, ZeroIdempotent
from .pbij import PartialBijection, SubsetIdempotent, points_of, popcount

DEFAULT_CAP = 200_000


class FiniteBIM:
    """A finite Boolean inverse monoid of partial bijections of ``{0..n-1}``.

    Do not instantiate directly; use :func:`close`, :func:`semisimple`,
    :func:`symmetric` or :func:`local_monoid`.
    """

    def __init__(self, n: int, *, elements=None, blocks=None, generators=()):
        self.n = n
        self.generators = tuple(generators)
        self.blocks = tuple(blocks) if blocks is not None else None
        self._elements = frozenset(elements) if elements is not None else None
        self.one = PartialBijection.identity(n)
        self.zero = PartialBijection.zero(n)
        self.full_mask = (1 << n) - 1

    # -- element access -----------------------------------------------------

    @property
    def is_structured(self) -> bool:
        return self.blocks is not None

    @cached_property
    def block_masks(self) -> tuple:
        out, start = [], 0
        for size in self.blocks:
            out.append(((1 << size) - 1) << start)
            start += size
        return tuple(out)

    def elements_capped(self, cap: int = DEFAULT_CAP) -> frozenset:
        if self._elements is None:
            if self.size > cap:
                raise CapExceeded(cap)
            self._elements = frozenset(_enumerate_semisimple(self.n, self.block_masks))
        return self._elements

    @property
    def elements(self) -> frozenset:
        return self.elements_capped()

    @cached_property
    def size(self) -> int:
        if self._elements is not None:
            return len(self._elements)
        total = 1
        for k in self.blocks:
            total *= symmetric_order(k)
        return total

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(sorted(self.elements))

    def contains(self, s: PartialBijection) -> bool:
        if not isinstance(s, PartialBijection) or s.n != self.n:
            return False
        if self._elements is not None and not self.is_structured:
            return s in self._elements
        # block-diagonal test
        for bm in self.block_masks:
            for x, y in s.graph:
                if (bm >> x) & 1 and not (bm >> y) & 1:
                    return False
        return True

    __contains__ = contains

    # -- idempotents --------------------------------------------------------

    @cached_property
    def idempotents(self) -> tuple:
        """Sorted tuple of idempotent masks."""
        if self.is_structured:
            if self.n > 20:
                raise CapExceeded(1 << 20)
            return tuple(range(1 << self.n))
        return tuple(sorted({s.dom_mask for s in self._elements if s.is_idempotent}))

    @cached_property
    def _idempotent_set(self) -> frozenset:
        return frozenset(self.idempotents)

    def is_idempotent_mask(self, mask: int) -> bool:
        if self.is_structured:
            return 0 <= mask <= self.full_mask
        return mask in self._idempotent_set

    @cached_property
    def atoms(self) -> tuple:
        if self.is_structured:
            return tuple(1 << i for i in range(self.n))
        nonzero = [e for e in self.idempotents if e]
        return tuple(
            sorted(e for e in nonzero if not any(f != e and f & ~e == 0 for f in nonzero))
        )

    def atoms_below(self, mask: int) -> list:
        return [a for a in self.atoms if a & ~mask == 0]

    # -- Green's D relation on idempotents ----------------------------------

    @cached_property
    def _d_index(self) -> dict:
        index = {}
        for s in sorted(self._elements):
            index.setdefault((s.dom_mask, s.ran_mask), s)
        return index

    @cached_property
    def _d_class_of(self) -> dict:
        parent = {e: e for e in self.idempotents}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d, r in self._d_index:
            a, b = find(d), find(r)
            if a != b:
                parent[max(a, b)] = min(a, b)
        return {e: find(e) for e in self.idempotents}

    def _signature(self, mask: int) -> tuple:
        return tuple(popcount(mask & bm) for bm in self.block_masks)

    def d_witness(self, e: int, f: int) -> Optional[PartialBijection]:
        """Some element ``s`` with ``d(s) = e`` and ``r(s) = f``, as masks."""
        if self.is_structured:
            if self._signature(e) != self._signature(f):
                return None
            graph = []
            for bm in self.block_masks:
                graph.extend(zip(points_of(e & bm), points_of(f & bm)))
            return PartialBijection(self.n, graph)
        return self._d_index.get((e, f))

    def d_rep(self, e: int):
        """A canonical key for the D-class of ``e``."""
        if self.is_structured:
            return self._signature(e)
        return self._d_class_of[e]

    def d_class(self, e: int) -> list:
        key = self.d_rep(e)
        return [f for f in self.idempotents if self.d_rep(f) == key]

    # -- atom classes (the variables of invariant means) --------------------

    @cached_property
    def atom_classes(self) -> tuple:
        """Atom D-classes as tuples of atom masks, ordered by least atom."""
        groups = {}
        for a in self.atoms:
            groups.setdefault(self.d_rep(a), []).append(a)
        return tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: g[0]))

    @cached_property
    def atom_class_index(self) -> dict:
        return {a: k for k, cls in enumerate(self.atom_classes) for a in cls}

    def class_counts(self, mask: int) -> tuple:
        """Number of atoms below ``mask`` in each atom class."""
        counts = [0] * len(self.atom_classes)
        for a in self.atoms_below(mask):
            counts[self.atom_class_index[a]] += 1
        return tuple(counts)

    @cached_property
    def units(self) -> tuple:
        if self.is_structured:
            return tuple(s for s in self.elements if s.dom_mask == self.full_mask)
        return tuple(sorted(s for s in self._elements if s.dom_mask == self.full_mask))

    def __repr__(self):
        kind = f"semisimple{list(self.blocks)}" if self.is_structured else f"{self.size} elements"
        return f"FiniteBIM(ground={self.n}, {kind})"


def symmetric_order(n: int) -> int:
    """``|I_n| = sum_k C(n,k)^2 k!``."""
    from math import comb, factorial

    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def _enumerate_block(points: list) -> list:
    """All partial bijections of ``points`` as lists of pairs."""
    out = []

    def rec(i, used, acc):
        if i == len(points):
            out.append(list(acc))
            return
        rec(i + 1, used, acc)
        for t in points:
            if t not in used:
                acc.append((points[i], t))
                used.add(t)
                rec(i + 1, used, acc)
                used.discard(t)
                acc.pop()

    rec(0, set(), [])
    return out


def _enumerate_semisimple(n: int, block_masks) -> list:
    parts = [_enumerate_block(points_of(bm)) for bm in block_masks]
    combos = [[]]
    for part in parts:
        combos = [c + p for c in combos for p in part]
    return [PartialBijection(n, c) for c in combos]


# -- constructors -------------------------------------------------------------

def close(n: int, generators: Iterable[PartialBijection], cap: int = DEFAULT_CAP) -> FiniteBIM:
    """Least Boolean inverse submonoid of I(n) containing ``generators``.

    Closes under products, inverses, joins of compatible pairs and
    complements of idempotents, starting from the generators, 0 and 1.
    """
    gens = tuple(generators)
    for g in gens:
        if g.n != n:
            raise GroundMismatch(f"generator {g!r} is not on ground {n}")
    elems: set = set()
    queue: deque = deque()
    full = (1 << n) - 1

    def add(x):
        if x not in elems:
            elems.add(x)
            queue.append(x)
            if len(elems) > cap:
                raise CapExceeded(cap)

    add(PartialBijection.zero(n))
    add(PartialBijection.identity(n))
    for g in gens:
        add(g)
    while queue:
        x = queue.popleft()
        add(x.inverse())
        if x.is_idempotent:
            add(PartialBijection.partial_identity(n, full & ~x.dom_mask))
        for y in list(elems):
            add(x * y)
            add(y * x)
            if x.compatible(y):
                add(x.join(y))
    return FiniteBIM(n, elements=elems, generators=gens)


def semisimple(block_sizes: Sequence[int]) -> FiniteBIM:
    """``I_{n1} x ... x I_{nk}`` realized block-diagonally in ``I(n1+...+nk)``."""
    sizes = [int(k) for k in block_sizes]
    if not sizes or any(k < 1 for k in sizes):
        raise ImeanError(f"block sizes must be a non-empty list of positive integers: {sizes}")
    return FiniteBIM(sum(sizes), blocks=sizes)


def symmetric(n: int) -> FiniteBIM:
    return semisimple([n])


def matrix_units(n: int, points: Optional[Iterable[int]] = None) -> list:
    """The maps ``{(i, j)}`` for ``i, j`` in ``points`` (default: all of ``0..n-1``)."""
    pts = list(range(n)) if points is None else list(points)
    return [PartialBijection(n, [(i, j)]) for i in pts for j in pts]


def semisimple_generators(block_sizes: Sequence[int]) -> list:
    """Block matrix units generating the semisimple monoid under :func:`close`."""
    n = sum(block_sizes)
    gens, start = [], 0
    for size in block_sizes:
        gens.extend(matrix_units(n, range(start, start + size)))
        start += size
    return gens


def from_spec(spec: dict) -> FiniteBIM:
    """Build a monoid from its JSON description."""
    if "semisimple" in spec:
        return semisimple(spec["semisimple"])
    n = int(spec["ground"])
    gens = []
    for g in spec.get("generators", []):
        if isinstance(g, dict):
            g = PartialBijection.from_json({"ground": g.get("ground", n), "graph": g["graph"]})
        else:
            g = PartialBijection(n, [tuple(p) for p in g])
        gens.append(g)
    return close(n, gens, int(spec.get("cap", DEFAULT_CAP)))


# -- idempotent arguments -----------------------------------------------------

def as_mask(S: FiniteBIM, e) -> int:
    """Normalize an idempotent argument to a mask and check it lies in ``S``."""
    if isinstance(e, SubsetIdempotent):
        if e.n != S.n:
            raise GroundMismatch(f"idempotent on ground {e.n}, monoid on {S.n}")
        mask = e.mask
    elif isinstance(e, PartialBijection):
        if e.n != S.n:
            raise GroundMismatch(f"idempotent on ground {e.n}, monoid on {S.n}")
        if not e.is_idempotent:
            raise NotAnElement(f"{e!r} is not an idempotent")
        mask = e.dom_mask
    else:
        mask = int(e)
    if not S.is_idempotent_mask(mask):
        raise NotAnElement(f"idempotent {points_of(mask)} is not in the monoid")
    return mask


def subset(S: FiniteBIM, mask: int) -> SubsetIdempotent:
    return SubsetIdempotent.from_mask(S.n, mask)


# -- Green's relations --------------------------------------------------------

def d_related(S: FiniteBIM, e, f) -> Optional[PartialBijection]:
    return S.d_witness(as_mask(S, e), as_mask(S, f))


def j_leq(S: FiniteBIM, e, f) -> bool:
    """``e <=_J f``: ``e`` is D-related to some idempotent below ``f``."""
    e, f = as_mask(S, e), as_mask(S, f)
    if S.is_structured:
        return all(a <= b for a, b in zip(S._signature(e), S._signature(f)))
    return any(g & ~f == 0 for g in S.d_class(e))


def check_d_eq_j(S: FiniteBIM) -> bool:
    idem = S.idempotents
    for e in idem:
        for f in idem:
            if e < f and j_leq(S, e, f) and j_leq(S, f, e) and S.d_witness(e, f) is None:
                return False
    return True


# -- pencils and largeness ----------------------------------------------------

@dataclass(frozen=True)
class Pencil:
    target: SubsetIdempotent
    elements: tuple
    bound: SubsetIdempotent

    def __len__(self):
        return len(self.elements)

    def is_valid(self, S: Optional[FiniteBIM] = None) -> bool:
        dom = 0
        for x in self.elements:
            if S is not None and not S.contains(x):
                return False
            if x.ran_mask & ~self.bound.mask:
                return False
            dom |= x.dom_mask
        return dom == self.target.mask


def preceq(S: FiniteBIM, e, f) -> Optional[Pencil]:
    """A pencil from ``e`` to ``f`` if one exists.

    Each atom of ``e`` is sent into ``f`` by some element; pieces with
    orthogonal ranges are then merged to keep the pencil short.
    """
    e, f = as_mask(S, e), as_mask(S, f)
    if e == 0:
        raise ZeroIdempotent("pencils start from a non-zero idempotent")
    pieces = []
    for a in S.atoms_below(e):
        if a & ~f == 0:
            pieces.append(PartialBijection.partial_identity(S.n, a))
            continue
        for b in S.atoms_below(f):
            w = S.d_witness(a, b)
            if w is not None:
                pieces.append(w)
                break
        else:
            return None
    groups: list = []
    for p in pieces:
        for k, g in enumerate(groups):
            if not g.ran_mask & p.ran_mask:
                groups[k] = g.join(p)
                break
        else:
            groups.append(p)
    return Pencil(subset(S, e), tuple(groups), subset(S, f))


def orthogonalize_pencil(S: FiniteBIM, p: Pencil) -> Pencil:
    seen = 0
    out = []
    for x in p.elements:
        y = x.restrict(x.dom_mask & ~seen)
        seen |= x.dom_mask
        if not y.is_zero:
            out.append(y)
    return Pencil(p.target, tuple(out), p.bound)


def is_large(S: FiniteBIM, e) -> Optional[Pencil]:
    return preceq(S, S.full_mask, e)


def is_zero_simplifying(S: FiniteBIM) -> bool:
    return all(is_large(S, e) is not None for e in S.idempotents if e)


def join_ideal(S: FiniteBIM, e) -> frozenset:
    """``(SeS)^v``: the smallest ideal closed under compatible joins containing ``e``."""
    e = as_mask(S, e)
    E = PartialBijection.partial_identity(S.n, e)
    elems = sorted(S.elements)
    ideal = {s * E * t for s in elems for t in elems}
    frontier = list(ideal)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(ideal):
                if x.compatible(y):
                    z = x.join(y)
                    if z not in ideal:
                        ideal.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(ideal)


def is_zero_simplifying_by_ideals(S: FiniteBIM) -> bool:
    """Reference check: every non-zero idempotent generates all of ``S`` as a v-ideal."""
    everything = S.elements
    return all(join_ideal(S, e) == everything for e in S.idempotents if e)


# -- local monoids ------------------------------------------------------------

def local_monoid(S: FiniteBIM, e) -> FiniteBIM:
    """``eSe`` relabelled onto the ground set ``{0, ..., |e|-1}``."""
    e = as_mask(S, e)
    if e == 0:
        raise ZeroIdempotent("local monoid at the zero idempotent")
    pts = points_of(e)
    k = len(pts)
    if e == S.full_mask:
        return S
    if S.is_structured:
        sizes = [popcount(e & bm) for bm in S.block_masks]
        return semisimple([s for s in sizes if s])
    relabel = {p: i for i, p in enumerate(pts)}
    E = PartialBijection.partial_identity(S.n, e)
    local = set()
    for s in S.elements:
        t = E * s * E
        local.add(PartialBijection(k, [(relabel[x], relabel[y]) for x, y in t.graph]))
    return FiniteBIM(k, elements=local)


def embed_local_mask(S: FiniteBIM, e: int, local_mask: int) -> int:
    """Map an idempotent mask of ``local_monoid(S, e)`` back into ``S``."""
    pts = points_of(e)
    out = 0
    for i in points_of(local_mask):
        out |= 1 << pts[i]
    return out


def random_element(S: FiniteBIM, rng) -> PartialBijection:
    """A random element; uniform for explicit monoids, blockwise random otherwise."""
    if not S.is_structured:
        return rng.choice(sorted(S.elements))
    graph = []
    for bm in S.block_masks:
        pts = points_of(bm)
        src = [p for p in pts if rng.random() < 0.5]
        dst = rng.sample(pts, len(src))
        graph.extend(zip(src, dst))
    return PartialBijection(S.n, graph)
