"""Partial bijections of a finite set ``{0, ..., n-1}`` and its subset algebra.

Products are written right to left, as for functions: ``a * b`` first applies
``b`` and then ``a``.  With this convention ``a.d() == a.inverse() * a`` is the
partial identity on the domain of ``a``.
"""

from __future__ import annotations

from typing import Iterable

from .errors import GroundMismatch, ImeanError, NotCompatible


def _check_ground(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ImeanError(f"ground set size must be a positive integer, got {n!r}")
    return n


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class PartialBijection:
    """An injective partial map on ``{0, ..., n-1}``.

    The graph is stored sorted by source, so equal maps compare and hash equal.
    """

    __slots__ = ("n", "graph", "_arr", "dom_mask", "ran_mask", "_hash")

    def __init__(self, n: int, graph: Iterable[tuple[int, int]] = ()):
        _check_ground(n)
        arr = [-1] * n
        dom = ran = 0
        for s, t in graph:
            if not (0 <= s < n and 0 <= t < n):
                raise ImeanError(f"pair ({s}, {t}) outside ground set of size {n}")
            if (dom >> s) & 1:
                raise ImeanError(f"source {s} appears twice")
            if (ran >> t) & 1:
                raise ImeanError(f"target {t} appears twice")
            arr[s] = t
            dom |= 1 << s
            ran |= 1 << t
        self._init(n, tuple(arr), dom, ran)

    def _init(self, n, arr, dom, ran):
        self.n = n
        self._arr = arr
        self.dom_mask = dom
        self.ran_mask = ran
        self.graph = tuple((s, t) for s, t in enumerate(arr) if t >= 0)
        self._hash = hash((n, arr))

    @classmethod
    def _from_arr(cls, n: int, arr: tuple) -> "PartialBijection":
        obj = cls.__new__(cls)
        dom = ran = 0
        for s, t in enumerate(arr):
            if t >= 0:
                dom |= 1 << s
                ran |= 1 << t
        obj._init(n, arr, dom, ran)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PartialBijection":
        return cls._from_arr(_check_ground(n), tuple(range(n)))

    @classmethod
    def zero(cls, n: int) -> "PartialBijection":
        return cls._from_arr(_check_ground(n), (-1,) * n)

    @classmethod
    def partial_identity(cls, n: int, mask: int) -> "PartialBijection":
        return cls._from_arr(n, tuple(i if (mask >> i) & 1 else -1 for i in range(n)))

    @classmethod
    def from_dict(cls, n: int, mapping: dict) -> "PartialBijection":
        return cls(n, sorted(mapping.items()))

    # -- basic accessors ----------------------------------------------------

    def __call__(self, x: int):
        """Image of ``x``, or ``None`` when ``x`` is outside the domain."""
        t = self._arr[x]
        return None if t < 0 else t

    def as_dict(self) -> dict:
        return dict(self.graph)

    @property
    def is_zero(self) -> bool:
        return self.dom_mask == 0

    @property
    def is_idempotent(self) -> bool:
        return all(s == t for s, t in self.graph)

    @property
    def rank(self) -> int:
        return len(self.graph)

    def __eq__(self, other):
        if not isinstance(other, PartialBijection):
            return NotImplemented
        return self.n == other.n and self._arr == other._arr

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.n, self.graph) < (other.n, other.graph)

    def __repr__(self):
        body = ", ".join(f"{s}->{t}" for s, t in self.graph)
        return f"PBij[{self.n}]({body})"

    # -- inverse semigroup structure ----------------------------------------

    def _same_ground(self, other: "PartialBijection"):
        if self.n != other.n:
            raise GroundMismatch(f"ground sizes {self.n} and {other.n} differ")

    def __mul__(self, other: "PartialBijection") -> "PartialBijection":
        if not isinstance(other, PartialBijection):
            return NotImplemented
        self._same_ground(other)
        a = self._arr
        return PartialBijection._from_arr(
            self.n, tuple(a[t] if t >= 0 else -1 for t in other._arr)
        )

    def inverse(self) -> "PartialBijection":
        inv = [-1] * self.n
        for s, t in self.graph:
            inv[t] = s
        return PartialBijection._from_arr(self.n, tuple(inv))

    def d(self) -> "PartialBijection":
        return PartialBijection.partial_identity(self.n, self.dom_mask)

    def r(self) -> "PartialBijection":
        return PartialBijection.partial_identity(self.n, self.ran_mask)

    def restrict(self, mask: int) -> "PartialBijection":
        """``self * 1_A`` where ``A`` is given as a bitmask."""
        return PartialBijection._from_arr(
            self.n, tuple(t if (mask >> s) & 1 else -1 for s, t in enumerate(self._arr))
        )

    def corestrict(self, mask: int) -> "PartialBijection":
        """``1_A * self``."""
        return PartialBijection._from_arr(
            self.n, tuple(t if t >= 0 and (mask >> t) & 1 else -1 for t in self._arr)
        )

    def leq(self, other: "PartialBijection") -> bool:
        self._same_ground(other)
        b = other._arr
        return all(t < 0 or b[s] == t for s, t in enumerate(self._arr))

    def compatible(self, other: "PartialBijection") -> bool:
        self._same_ground(other)
        a, b = self._arr, other._arr
        for s in range(self.n):
            if a[s] >= 0 and b[s] >= 0 and a[s] != b[s]:
                return False
        # a and b must also agree on shared targets
        inv_a = {t: s for s, t in self.graph}
        for s, t in other.graph:
            if t in inv_a and inv_a[t] != s:
                return False
        return True

    def orthogonal(self, other: "PartialBijection") -> bool:
        self._same_ground(other)
        return not (self.dom_mask & other.dom_mask) and not (self.ran_mask & other.ran_mask)

    def join(self, other: "PartialBijection") -> "PartialBijection":
        if not self.compatible(other):
            raise NotCompatible(f"{self!r} and {other!r} are not compatible")
        a, b = self._arr, other._arr
        return PartialBijection._from_arr(
            self.n, tuple(a[s] if a[s] >= 0 else b[s] for s in range(self.n))
        )

    def to_json(self) -> dict:
        return {"ground": self.n, "graph": [[s, t] for s, t in self.graph]}

    @classmethod
    def from_json(cls, obj: dict) -> "PartialBijection":
        return cls(int(obj["ground"]), [(int(s), int(t)) for s, t in obj["graph"]])


# module-level spellings of the operations

def compose(a: PartialBijection, b: PartialBijection) -> PartialBijection:
    return a * b


def inverse(a: PartialBijection) -> PartialBijection:
    return a.inverse()


def natural_leq(a: PartialBijection, b: PartialBijection) -> bool:
    return a.leq(b)


def compatible(a: PartialBijection, b: PartialBijection) -> bool:
    return a.compatible(b)


def orthogonal(a: PartialBijection, b: PartialBijection) -> bool:
    return a.orthogonal(b)


def join(a: PartialBijection, b: PartialBijection) -> PartialBijection:
    return a.join(b)


def join_all(elements: Iterable[PartialBijection], n: int) -> PartialBijection:
    out = PartialBijection.zero(n)
    for x in elements:
        out = out.join(x)
    return out


class SubsetIdempotent:
    """A subset of the ground set, identified with its partial identity."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, members: Iterable[int] = ()):
        _check_ground(n)
        m = 0
        for i in members:
            if not 0 <= i < n:
                raise ImeanError(f"member {i} outside ground set of size {n}")
            m |= 1 << i
        self.n = n
        self.mask = m

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "SubsetIdempotent":
        obj = cls.__new__(cls)
        obj.n = _check_ground(n)
        if mask >> n:
            raise ImeanError(f"mask {mask:b} outside ground set of size {n}")
        obj.mask = mask
        return obj

    @classmethod
    def full(cls, n: int) -> "SubsetIdempotent":
        return cls.from_mask(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "SubsetIdempotent":
        return cls.from_mask(n, 0)

    @classmethod
    def from_pbij(cls, a: PartialBijection) -> "SubsetIdempotent":
        if not a.is_idempotent:
            raise ImeanError(f"{a!r} is not an idempotent")
        return cls.from_mask(a.n, a.dom_mask)

    @property
    def members(self) -> list[int]:
        return points_of(self.mask)

    def __len__(self):
        return popcount(self.mask)

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def to_pbij(self) -> PartialBijection:
        return PartialBijection.partial_identity(self.n, self.mask)

    def _same_ground(self, other):
        if self.n != other.n:
            raise GroundMismatch(f"ground sizes {self.n} and {other.n} differ")

    def meet(self, other: "SubsetIdempotent") -> "SubsetIdempotent":
        self._same_ground(other)
        return SubsetIdempotent.from_mask(self.n, self.mask & other.mask)

    def join(self, other: "SubsetIdempotent") -> "SubsetIdempotent":
        self._same_ground(other)
        return SubsetIdempotent.from_mask(self.n, self.mask | other.mask)

    def complement(self) -> "SubsetIdempotent":
        return SubsetIdempotent.from_mask(self.n, ((1 << self.n) - 1) & ~self.mask)

    def leq(self, other: "SubsetIdempotent") -> bool:
        self._same_ground(other)
        return self.mask & ~other.mask == 0

    def __eq__(self, other):
        if not isinstance(other, SubsetIdempotent):
            return NotImplemented
        return self.n == other.n and self.mask == other.mask

    def __hash__(self):
        return hash(("subset", self.n, self.mask))

    def __repr__(self):
        return f"Subset[{self.n}]{set(self.members) or '{}'}"

    def to_json(self) -> dict:
        return {"ground": self.n, "members": self.members}

    @classmethod
    def from_json(cls, obj: dict) -> "SubsetIdempotent":
        return cls(int(obj["ground"]), [int(i) for i in obj["members"]])


def subset_ops(e: SubsetIdempotent, f: SubsetIdempotent) -> dict:
    """Meet, join, complement of ``e`` and inclusion, in one call."""
    return {
        "meet": e.meet(f),
        "join": e.join(f),
        "complement": e.complement(),
        "leq": e.leq(f),
    }
