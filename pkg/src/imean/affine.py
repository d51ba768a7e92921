"""Partial bijections of the naturals built from residue classes.

A piece sends the class ``c mod m`` onto the class ``c2 mod m2`` by
``c + m t -> c2 + m2 t`` (so ``0 <= c < m`` and ``0 <= c2 < m2``).  Images of
pieces are whole residue classes, which keeps domains and ranges inside the
Boolean algebra of periodic sets.  In slope/offset form this is
``x -> a x + b`` with ``a = m2/m`` and ``b = c2 - a c``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .errors import ImeanError, NotInClass, NotOrthogonal, OverflowGuard
from .exact import fmt, frac

MODULUS_CAP = 10 ** 6


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _guard(m: int, cap: int = MODULUS_CAP) -> int:
    if m > cap:
        raise OverflowGuard(f"modulus {m} exceeds the bound {cap}")
    return m


def _divisors(n: int) -> list:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


class PeriodicSet:
    """``{x in N : x mod modulus in residues}``, stored with the least modulus."""

    __slots__ = ("modulus", "residues")

    def __init__(self, modulus: int, residues: Iterable[int]):
        m = int(modulus)
        if m < 1:
            raise ValueError("modulus must be positive")
        res = frozenset(int(r) % m for r in residues)
        for d in _divisors(m):
            coarse = frozenset(r % d for r in res)
            if len(coarse) * (m // d) == len(res):
                m, res = d, coarse
                break
        self.modulus = _guard(m)
        self.residues = res

    @classmethod
    def full(cls) -> "PeriodicSet":
        return cls(1, [0])

    @classmethod
    def empty(cls) -> "PeriodicSet":
        return cls(1, [])

    def refine(self, m: int) -> frozenset:
        """Residues modulo a multiple ``m`` of the modulus."""
        k = self.modulus
        return frozenset(r + k * j for r in self.residues for j in range(m // k))

    def _binary(self, other, op) -> "PeriodicSet":
        L = _guard(_lcm(self.modulus, other.modulus))
        return PeriodicSet(L, op(self.refine(L), other.refine(L)))

    def __or__(self, other):
        return self._binary(other, frozenset.__or__)

    def __and__(self, other):
        return self._binary(other, frozenset.__and__)

    def __sub__(self, other):
        return self._binary(other, frozenset.__sub__)

    def complement(self) -> "PeriodicSet":
        return PeriodicSet(self.modulus, set(range(self.modulus)) - self.residues)

    def __contains__(self, x: int) -> bool:
        return x >= 0 and x % self.modulus in self.residues

    def leq(self, other: "PeriodicSet") -> bool:
        return (self - other).is_empty

    def disjoint(self, other: "PeriodicSet") -> bool:
        return (self & other).is_empty

    @property
    def is_full(self) -> bool:
        return self.modulus == 1 and self.residues == {0}

    @property
    def is_empty(self) -> bool:
        return not self.residues

    def __eq__(self, other):
        return isinstance(other, PeriodicSet) and (self.modulus, self.residues) == (
            other.modulus, other.residues)

    def __hash__(self):
        return hash((self.modulus, self.residues))

    def __repr__(self):
        return f"PeriodicSet({self.modulus}, {sorted(self.residues)})"

    def to_json(self) -> dict:
        return {"mod": self.modulus, "res": sorted(self.residues)}


def _piece_from_affine(a, b, mod, res) -> tuple:
    a, b = frac(a), frac(b)
    m, c = int(mod), int(res)
    if m < 1 or not 0 <= c < m:
        raise NotInClass(f"need 0 <= res < mod, got res={c}, mod={m}")
    m2, c2 = a * m, a * c + b
    if a <= 0 or m2.denominator != 1 or c2.denominator != 1:
        raise NotInClass(f"x -> {fmt(a)}x + {fmt(b)} on {c} mod {m} does not land on a residue class")
    m2, c2 = int(m2), int(c2)
    if not 0 <= c2 < m2:
        raise NotInClass(
            f"image of {c} mod {m} under x -> {fmt(a)}x + {fmt(b)} is not an exact residue class")
    return (_guard(m), c, _guard(m2), c2)


def _refine_piece(p: tuple, L: int) -> list:
    """Split a piece with domain modulus ``m`` into pieces with domain modulus ``L``."""
    m, c, m2, c2 = p
    k = L // m
    return [(L, c + m * j, m2 * k, c2 + m2 * j) for j in range(k)]


class AffineMap:
    """A finite disjoint union of residue-class pieces; a partial bijection of N."""

    __slots__ = ("pieces", "_dom", "_ran")

    def __init__(self, pieces: Iterable[tuple] = ()):
        ps = [tuple(int(v) for v in p) for p in pieces]
        for m, c, m2, c2 in ps:
            if m < 1 or m2 < 1 or not 0 <= c < m or not 0 <= c2 < m2:
                raise NotInClass(f"malformed piece {(m, c, m2, c2)}")
            _guard(m)
            _guard(m2)
        dom = [PeriodicSet(m, [c]) for m, c, _, _ in ps]
        ran = [PeriodicSet(m2, [c2]) for _, _, m2, c2 in ps]
        for sets, what in ((dom, "domains"), (ran, "images")):
            for i in range(len(sets)):
                for j in range(i):
                    if not sets[i].disjoint(sets[j]):
                        raise NotOrthogonal(f"pieces with overlapping {what}")
        self.pieces = tuple(_canonical(ps))
        self._dom = self._ran = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls([(1, 0, 1, 0)])

    @classmethod
    def zero(cls) -> "AffineMap":
        return cls([])

    @classmethod
    def affine(cls, a, b=0, mod: int = 1, res: int = 0) -> "AffineMap":
        """``x -> a x + b`` on the class ``res mod mod``."""
        return cls([_piece_from_affine(a, b, mod, res)])

    @classmethod
    def partial_identity(cls, P: PeriodicSet) -> "AffineMap":
        return cls([(P.modulus, r, P.modulus, r) for r in sorted(P.residues)])

    @classmethod
    def from_json(cls, obj: dict) -> "AffineMap":
        return cls([_piece_from_affine(p["a"], p.get("b", 0), p.get("mod", 1), p.get("res", 0))
                    for p in obj["pieces"]])

    def to_json(self) -> dict:
        out = []
        for m, c, m2, c2 in self.pieces:
            a = Fraction(m2, m)
            out.append({"a": _num(a), "b": _num(c2 - a * c), "mod": m, "res": c})
        return {"pieces": out}

    # -- basic structure ------------------------------------------------------

    def __call__(self, x: int) -> Optional[int]:
        for m, c, m2, c2 in self.pieces:
            if x >= 0 and x % m == c:
                return c2 + m2 * ((x - c) // m)
        return None

    @property
    def dom(self) -> PeriodicSet:
        if self._dom is None:
            self._dom = _union(PeriodicSet(m, [c]) for m, c, _, _ in self.pieces)
        return self._dom

    @property
    def ran(self) -> PeriodicSet:
        if self._ran is None:
            self._ran = _union(PeriodicSet(m2, [c2]) for _, _, m2, c2 in self.pieces)
        return self._ran

    def d(self) -> "AffineMap":
        return AffineMap.partial_identity(self.dom)

    def r(self) -> "AffineMap":
        return AffineMap.partial_identity(self.ran)

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def is_idempotent(self) -> bool:
        return all(m == m2 and c == c2 for m, c, m2, c2 in self.pieces)

    def _table(self, L: int) -> dict:
        """Domain residue mod ``L`` -> refined piece."""
        out = {}
        for p in self.pieces:
            for q in _refine_piece(p, L):
                out[q[1]] = q
        return out

    def _common(self, other) -> int:
        L = 1
        for m, *_ in self.pieces + other.pieces:
            L = _guard(_lcm(L, m))
        return L

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        if self.dom != other.dom or self.ran != other.ran:
            return False
        L = self._common(other)
        return self._table(L) == other._table(L)

    def __hash__(self):
        return hash((self.dom, self.ran))

    def __repr__(self):
        parts = []
        for m, c, m2, c2 in self.pieces:
            a = Fraction(m2, m)
            parts.append(f"[{c} mod {m}: x -> {fmt(a)}x{'+' if c2 - a * c >= 0 else ''}{fmt(c2 - a * c)}]")
        return "AffineMap(" + " ".join(parts) + ")" if parts else "AffineMap(0)"

    # -- inverse monoid operations -------------------------------------------

    def inverse(self) -> "AffineMap":
        return AffineMap([(m2, c2, m, c) for m, c, m2, c2 in self.pieces])

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        """``self * other`` applies ``other`` first."""
        out = []
        for m, c, m2, c2 in other.pieces:
            for n, d, n2, d2 in self.pieces:
                K = _lcm(m2, n)
                y0 = _crt(c2, m2, d, n)
                if y0 is None:
                    continue
                t0 = (y0 - c2) // m2
                dom_mod = _guard(m * (K // m2))
                out.append((dom_mod, c + m * t0, _guard(n2 * (K // n)), d2 + n2 * ((y0 - d) // n)))
        return AffineMap(out)

    def restrict(self, P: PeriodicSet) -> "AffineMap":
        """``self * 1_P``."""
        out = []
        for p in self.pieces:
            L = _guard(_lcm(p[0], P.modulus))
            out.extend(q for q in _refine_piece(p, L) if q[1] % P.modulus in P.residues)
        return AffineMap(out)

    def corestrict(self, P: PeriodicSet) -> "AffineMap":
        """``1_P * self``."""
        return self.inverse().restrict(P).inverse()

    def leq(self, other: "AffineMap") -> bool:
        return other.restrict(self.dom) == self

    def compatible(self, other: "AffineMap") -> bool:
        common = self.dom & other.dom
        inv_common = self.ran & other.ran
        return (self.restrict(common) == other.restrict(common)
                and self.inverse().restrict(inv_common) == other.inverse().restrict(inv_common))

    def orthogonal(self, other: "AffineMap") -> bool:
        return self.dom.disjoint(other.dom) and self.ran.disjoint(other.ran)

    def join(self, other: "AffineMap") -> "AffineMap":
        if not self.orthogonal(other):
            raise NotOrthogonal("affine join needs disjoint domains and disjoint ranges")
        return AffineMap(self.pieces + other.pieces)

    def power(self, k: int) -> "AffineMap":
        out = AffineMap.identity()
        for _ in range(k):
            out = self * out
        return out


def _num(x: Fraction):
    return x.numerator if x.denominator == 1 else fmt(x)


def _union(sets) -> PeriodicSet:
    acc = PeriodicSet.empty()
    for s in sets:
        acc = acc | s
    return acc


def _crt(a: int, m: int, b: int, n: int) -> Optional[int]:
    """Least ``y >= 0`` with ``y = a mod m`` and ``y = b mod n``, or ``None``."""
    g = gcd(m, n)
    if (b - a) % g:
        return None
    L = m // g * n
    # solve a + m k = b mod n
    k = ((b - a) // g * pow(m // g, -1, n // g)) % (n // g) if n // g > 1 else 0
    return (a + m * k) % L


def _canonical(pieces: list) -> list:
    """Merge pieces into the coarsest residue classes sharing one affine formula."""
    if not pieces:
        return []
    L = 1
    for p in pieces:
        L = _guard(_lcm(L, p[0]))
    table = {}
    for p in pieces:
        for q in _refine_piece(p, L):
            table[q[1]] = q
    out = []
    assigned = set()
    for d in _divisors(L):
        k = L // d
        for r in range(d):
            subs = [r + d * j for j in range(k)]
            if any(s in assigned or s not in table for s in subs):
                continue
            first = table[subs[0]]
            slope = Fraction(first[2], first[0])
            start = first[3]
            # one formula x -> start + slope (x - r) across every subclass
            if all(table[s][3] == start + slope * (s - r) and table[s][2] == first[2] for s in subs):
                m2 = slope * d
                if m2.denominator == 1 and start < m2:
                    out.append((d, r, int(m2), start))
                    assigned.update(subs)
    if len(assigned) != len(table):
        raise ImeanError("internal: canonical form did not cover the domain")
    return sorted(out)


class AffineMonoid:
    """Base object so that rook matrices can take affine entries."""

    one = AffineMap.identity()
    zero = AffineMap.zero()

    def contains(self, x) -> bool:
        return isinstance(x, AffineMap)

    __contains__ = contains

    def __repr__(self):
        return "AffineMonoid()"


AFFINE = AffineMonoid()
