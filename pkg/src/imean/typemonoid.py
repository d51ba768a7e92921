"""Type monoids of finite Boolean inverse monoids as commutative presentations.

Generators are the atom D-classes; an idempotent ``e`` is sent to the
multiset of classes of the atoms below it.  Relations come from D-related
pairs of idempotents.  For a finite monoid every such relation turns out to be
trivial (a D-witness maps the atoms of one idempotent bijectively onto
D-related atoms of the other), so the presentation is free; the relation
machinery is still general because presentations can also be written by hand,
for instance to model a unit with ``u = 2u``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from math import comb, prod
from typing import Optional, Sequence

from . import bim
from .bim import FiniteBIM
from .errors import ImeanError, InternalInvariantViolation
from .pbij import SubsetIdempotent, popcount


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __bool__(self):
        raise TypeError("a Verdict has three values; compare against Verdict.TRUE explicitly")


@dataclass(frozen=True)
class TypeElement:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if any(c < 0 for c in self.coeffs):
            raise ImeanError(f"type elements have non-negative coefficients: {self.coeffs}")

    def __add__(self, other: "TypeElement") -> "TypeElement":
        return TypeElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int) -> "TypeElement":
        return TypeElement(tuple(k * a for a in self.coeffs))

    @property
    def degree(self) -> int:
        return sum(self.coeffs)

    def to_json(self) -> dict:
        return {f"g{i}": c for i, c in enumerate(self.coeffs) if c}


@dataclass
class TypePresentation:
    generators: list
    relations: list  # pairs (lhs, rhs) of coefficient tuples
    unit: TypeElement
    monoid: Optional[FiniteBIM] = None
    trivial_dropped: int = 0
    class_atoms: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def element(self, coeffs) -> TypeElement:
        if isinstance(coeffs, dict):
            names = {g: i for i, g in enumerate(self.generators)}
            vec = [0] * self.rank
            for k, v in coeffs.items():
                vec[names[k]] = int(v)
            coeffs = vec
        el = TypeElement(coeffs)
        if len(el.coeffs) != self.rank:
            raise ImeanError(f"expected {self.rank} coefficients, got {len(el.coeffs)}")
        return el

    def with_relation(self, lhs, rhs) -> "TypePresentation":
        lhs, rhs = self.element(lhs).coeffs, self.element(rhs).coeffs
        return TypePresentation(
            list(self.generators), self.relations + [(lhs, rhs)], self.unit, self.monoid,
            self.trivial_dropped, list(self.class_atoms),
        )

    def to_json(self) -> dict:
        name = self.generators
        as_map = lambda v: {name[i]: c for i, c in enumerate(v) if c}  # noqa: E731
        return {
            "generators": list(name),
            "relations": [[as_map(l), as_map(r)] for l, r in self.relations],
            "unit": as_map(self.unit.coeffs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TypePresentation":
        gens = list(obj["generators"])
        idx = {g: i for i, g in enumerate(gens)}

        def vec(m):
            v = [0] * len(gens)
            for k, c in m.items():
                v[idx[k]] = int(c)
            return tuple(v)

        rels = [(vec(l), vec(r)) for l, r in obj.get("relations", [])]
        return cls(gens, rels, TypeElement(vec(obj["unit"])))


def _structured_dropped(S: FiniteBIM) -> int:
    # idempotents of a product of symmetric blocks are D-related iff their block
    # counts agree, so each D-class is one count vector of prod C(n_i, c_i) members
    sizes = [popcount(bm) for bm in S.block_masks]
    total = 0
    for c in product(*(range(n + 1) for n in sizes)):
        k = prod(comb(n, ci) for n, ci in zip(sizes, c))
        total += k * (k - 1)
    return total


def present(S: FiniteBIM) -> TypePresentation:
    gens = [f"g{k}" for k in range(len(S.atom_classes))]
    unit = TypeElement(S.class_counts(S.full_mask))
    classes = [list(c) for c in S.atom_classes]
    if S.is_structured:
        return TypePresentation(gens, [], unit, S, _structured_dropped(S), classes)
    relations = []
    dropped = 0
    # D-class -> count vector -> number of idempotents carrying it
    by_class: dict = {}
    for e in S.idempotents:
        counts = by_class.setdefault(S.d_rep(e), {})
        c = S.class_counts(e)
        counts[c] = counts.get(c, 0) + 1
    for counts in by_class.values():
        dropped += sum(k * (k - 1) for k in counts.values())
        vecs = list(counts)
        relations.extend((l, r) for l in vecs for r in vecs if l != r)
    return TypePresentation(gens, relations, unit, S, dropped, classes)


def delta(P: TypePresentation, e) -> TypeElement:
    if P.monoid is None:
        raise ImeanError("this presentation is not attached to a monoid")
    return TypeElement(P.monoid.class_counts(bim.as_mask(P.monoid, e)))


def _neighbours(P: TypePresentation, w: tuple):
    for lhs, rhs in P.relations:
        for a, b in ((lhs, rhs), (rhs, lhs)):
            if all(x >= y for x, y in zip(w, a)):
                yield tuple(x - y + z for x, y, z in zip(w, a, b))


def _explore(P: TypePresentation, start: tuple, bound: int, goal) -> Verdict:
    """Breadth-first search through the congruence class of ``start``."""
    if goal(start):
        return Verdict.TRUE
    seen = {start}
    queue = deque([start])
    truncated = False
    while queue:
        w = queue.popleft()
        for v in _neighbours(P, w):
            if v in seen:
                continue
            if sum(v) > bound:
                truncated = True
                continue
            if goal(v):
                return Verdict.TRUE
            seen.add(v)
            queue.append(v)
    return Verdict.UNKNOWN if truncated else Verdict.FALSE


def _default_bound(P: TypePresentation, *els: TypeElement) -> int:
    rel = max((max(sum(l), sum(r)) for l, r in P.relations), default=0)
    return 2 * sum(e.degree for e in els) + rel


def leq(P: TypePresentation, x: TypeElement, y: TypeElement, bound: Optional[int] = None) -> Verdict:
    """Decide ``x <= y`` in the algebraic preorder, i.e. ``y = x + c`` for some ``c``.

    The congruence class of ``y`` is explored up to total degree ``bound``;
    ``x <= y`` holds exactly when some word in it dominates ``x``
    coefficientwise.  ``UNKNOWN`` means the bound cut the search short.
    """
    if bound is None:
        bound = _default_bound(P, x, y)
    xs = x.coeffs
    return _explore(P, y.coeffs, bound, lambda w: all(a >= b for a, b in zip(w, xs)))


def equal(P: TypePresentation, x: TypeElement, y: TypeElement, bound: Optional[int] = None) -> Verdict:
    if bound is None:
        bound = _default_bound(P, x, y)
    return _explore(P, x.coeffs, bound, lambda w: w == y.coeffs)


@dataclass
class Obstruction:
    n: Optional[int]
    n_max: int
    inconclusive: tuple = ()

    @property
    def found(self) -> bool:
        return self.n is not None

    def describe(self) -> str:
        if self.n is not None:
            return f"({self.n}+1)u <= {self.n}u holds: a Tarski matrix of degree {self.n} exists"
        msg = f"no n <= {self.n_max} with (n+1)u <= nu"
        if self.inconclusive:
            msg += f" (inconclusive at n in {list(self.inconclusive)})"
        return msg


def tarski_obstruction(P: TypePresentation, n_max: int, bound: Optional[int] = None) -> Obstruction:
    """Least ``n <= n_max`` with ``(n+1)u <= nu`` certified; a semi-decision."""
    unknown = []
    for n in range(1, n_max + 1):
        v = leq(P, (n + 1) * P.unit, n * P.unit, bound)
        if v is Verdict.TRUE:
            return Obstruction(n, n_max, tuple(unknown))
        if v is Verdict.UNKNOWN:
            unknown.append(n)
    return Obstruction(None, n_max, tuple(unknown))


def oplus_partial(S: FiniteBIM, e, f) -> Optional[SubsetIdempotent]:
    """``[e] + [f]`` on D-classes of ``S`` when orthogonal representatives exist.

    The class is returned through its least representative.  Every pair of
    orthogonal representatives is tried and must land in the same class.
    """
    e, f = bim.as_mask(S, e), bim.as_mask(S, f)
    results = {}
    for e2 in S.d_class(e):
        for f2 in S.d_class(f):
            if e2 & f2 == 0:
                results.setdefault(S.d_rep(e2 | f2), e2 | f2)
    if not results:
        return None
    if len(results) > 1:
        raise InternalInvariantViolation(f"[e] + [f] is not well defined: {sorted(results)}")
    (join,) = results.values()
    return SubsetIdempotent.from_mask(S.n, min(S.d_class(join)))


def multiset_delta(P: TypePresentation, es: Sequence) -> TypeElement:
    total = TypeElement((0,) * P.rank)
    for e in es:
        total = total + delta(P, e)
    return total
