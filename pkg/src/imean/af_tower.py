"""Towers of semisimple inverse monoids and their invariant means.

Level ``i`` is ``I_{m_i[0]} x ... x I_{m_i[k]}``; the map into level ``i+1`` is
recorded by a non-negative integer matrix ``M_i`` whose entry ``[l][j]`` counts
how many copies of block ``j`` sit inside block ``l``.  A mean on level ``i+1``
given by atom values ``y`` pulls back to ``x = M_i^T y``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import bim
from .bim import FiniteBIM
from .errors import (
    BadBase, CapExceeded, DimensionMismatch, InternalInvariantViolation, NotNormalized, NotUHF,
    ZeroColumn,
)
from .exact import fmt, frac
from .means import MeanVector
from .pbij import PartialBijection, points_of

DEFAULT_GROUND_CAP = 8
# beyond this many elements the embedding is checked on random samples
EXHAUSTIVE_LIMIT = 400


@dataclass(frozen=True)
class AFTower:
    levels: tuple
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(tuple(int(v) for v in m) for m in self.levels))
        object.__setattr__(
            self, "maps", tuple(tuple(tuple(int(v) for v in row) for row in M) for M in self.maps)
        )

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def to_json(self) -> dict:
        return {"levels": [list(m) for m in self.levels], "maps": [[list(r) for r in M] for M in self.maps]}

    @classmethod
    def from_json(cls, obj: dict) -> "AFTower":
        return cls(obj["levels"], obj["maps"])

    @classmethod
    def uhf(cls, factors: Sequence[int]) -> "AFTower":
        """The single-block tower ``1, f0, f0 f1, ...``."""
        levels, n = [[1]], 1
        for f in factors:
            n *= f
            levels.append([n])
        return cls(levels, [[[f]] for f in factors])


@dataclass(frozen=True)
class TowerMean:
    values: tuple  # one tuple of Fractions per level

    def level(self, i: int) -> tuple:
        return self.values[i]

    def to_json(self) -> dict:
        return {"levels": [[fmt(v) for v in x] for x in self.values]}


def _matvec(M, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def _transpose_apply(M, y):
    cols = len(M[0]) if M else 0
    return tuple(sum((M[l][j] * y[l] for l in range(len(M))), Fraction(0)) for j in range(cols))


def validate_tower(T: AFTower) -> bool:
    if not T.levels or list(T.levels[0]) != [1]:
        raise BadBase(f"level 0 must be [1], got {list(T.levels[0]) if T.levels else None}")
    if len(T.maps) != len(T.levels) - 1:
        raise DimensionMismatch(len(T.maps), f"{len(T.levels)} levels need {len(T.levels) - 1} maps")
    for i, M in enumerate(T.maps):
        m, r = T.levels[i], T.levels[i + 1]
        if any(v <= 0 for v in r):
            raise DimensionMismatch(i + 1, "block sizes must be positive")
        if len(M) != len(r) or any(len(row) != len(m) for row in M):
            raise DimensionMismatch(i, f"map shape must be {len(r)}x{len(m)}")
        if any(v < 0 for row in M for v in row):
            raise DimensionMismatch(i, "map entries must be non-negative")
        for j in range(len(m)):
            if all(M[l][j] == 0 for l in range(len(r))):
                raise ZeroColumn(i, j)
        if _matvec(M, m) != tuple(r):
            raise DimensionMismatch(i, f"M m = {list(_matvec(M, m))} but next level is {list(r)}")
    return True


def _normalized(m, x) -> bool:
    return sum(a * b for a, b in zip(m, x)) == 1


def _check_seed(m, y, level):
    if len(y) != len(m):
        raise DimensionMismatch(level, f"vector of length {len(y)} for {len(m)} blocks")
    if any(v < 0 for v in y) or not _normalized(m, y):
        raise NotNormalized(f"vector {[fmt(v) for v in y]} is not a normalized mean at level {level}")


def pull_back(T: AFTower, i: int, y: Sequence) -> tuple:
    """Atom values on level ``i`` induced by atom values ``y`` on level ``i+1``."""
    y = tuple(frac(v) for v in y)
    _check_seed(T.levels[i + 1], y, i + 1)
    x = _transpose_apply(T.maps[i], y)
    if not _normalized(T.levels[i], x):
        raise InternalInvariantViolation(f"pull-back lost normalization at level {i}")
    return x


def tower_mean(T: AFTower, d: int, seed: Sequence) -> TowerMean:
    validate_tower(T)
    if not 0 <= d <= T.depth:
        raise DimensionMismatch(d, f"depth must lie in 0..{T.depth}")
    seed = tuple(frac(v) for v in seed)
    _check_seed(T.levels[d], seed, d)
    vals = [seed]
    for i in range(d - 1, -1, -1):
        vals.append(pull_back(T, i, vals[-1]))
    vals.reverse()
    for i in range(d):
        if _transpose_apply(T.maps[i], vals[i + 1]) != vals[i]:
            raise InternalInvariantViolation(f"compatibility fails between levels {i} and {i + 1}")
    return TowerMean(tuple(vals))


def uhf_unique_mean(T: AFTower, d: int) -> TowerMean:
    validate_tower(T)
    for i, m in enumerate(T.levels[: d + 1]):
        if len(m) != 1:
            raise NotUHF(f"level {i} has {len(m)} blocks")
    mu = tower_mean(T, d, [Fraction(1, T.levels[d][0])])
    for i, x in enumerate(mu.values):
        if x != (Fraction(1, T.levels[i][0]),):
            raise InternalInvariantViolation(f"level {i} value {x} differs from 1/{T.levels[i][0]}")
    return mu


# -- concrete realizations ----------------------------------------------------

def realize_level(T: AFTower, i: int, cap: int = DEFAULT_GROUND_CAP) -> FiniteBIM:
    """Level ``i`` as a monoid of partial bijections, closed from block matrix units when small."""
    sizes = T.levels[i]
    if sum(sizes) > cap:
        raise CapExceeded(cap)
    if bim.symmetric_order(max(sizes)) <= EXHAUSTIVE_LIMIT and sum(sizes) <= 5:
        return bim.close(sum(sizes), bim.semisimple_generators(sizes))
    return bim.semisimple(sizes)


def _offsets(sizes):
    out, s = [], 0
    for k in sizes:
        out.append(s)
        s += k
    return out


@dataclass
class Embedding:
    """Block-diagonal copying of level ``i`` into level ``i+1``."""

    source: FiniteBIM
    target: FiniteBIM
    copies: list  # per source block j: list of target offsets of its copies
    src_blocks: tuple

    def __call__(self, s: PartialBijection) -> PartialBijection:
        offs = _offsets(self.src_blocks)
        graph = []
        for x, y in s.graph:
            j = max(b for b, o in enumerate(offs) if o <= x)
            if not offs[j] <= y < offs[j] + self.src_blocks[j]:
                raise InternalInvariantViolation(f"{s!r} is not block diagonal")
            for start in self.copies[j]:
                graph.append((start + x - offs[j], start + y - offs[j]))
        return PartialBijection(self.target.n, graph)

    def image_mask(self, e: int) -> int:
        return self(PartialBijection.partial_identity(self.source.n, e)).dom_mask


def embedding(T: AFTower, i: int, cap: int = DEFAULT_GROUND_CAP) -> Embedding:
    src, dst = realize_level(T, i, cap), realize_level(T, i + 1, cap)
    m, r, M = T.levels[i], T.levels[i + 1], T.maps[i]
    copies = [[] for _ in m]
    for l, start in enumerate(_offsets(r)):
        pos = start
        for j in range(len(m)):
            for _ in range(M[l][j]):
                copies[j].append(pos)
                pos += m[j]
        if pos != start + r[l]:
            raise DimensionMismatch(i, f"block {l} of level {i + 1} is not filled exactly")
    return Embedding(src, dst, copies, m)


@dataclass
class EmbeddingReport:
    ok: bool
    checked_pairs: int
    exhaustive: bool
    failures: list


def _sample(S: FiniteBIM, rng, k):
    if not S.is_structured or S.size <= EXHAUSTIVE_LIMIT:
        return sorted(S.elements_capped(EXHAUSTIVE_LIMIT * 10)), True
    return [bim.random_element(S, rng) for _ in range(k)], False


def check_embedding(T: AFTower, i: int, cap: int = DEFAULT_GROUND_CAP, seed: int = 0,
                    samples: int = 60) -> EmbeddingReport:
    """Audit the realized map: morphism, 0, 1, compatible joins, injectivity, atom images."""
    validate_tower(T)
    tau = embedding(T, i, cap)
    S, R = tau.source, tau.target
    rng = random.Random(seed)
    elems, exhaustive = _sample(S, rng, samples)
    fails = []
    img = {s: tau(s) for s in elems}
    if tau(S.zero) != R.zero:
        fails.append(("zero", S.zero))
    if tau(S.one) != R.one:
        fails.append(("one", S.one))
    if len(set(img.values())) != len(img):
        fails.append(("injective", None))
    pairs = 0
    for s in elems:
        if not R.contains(img[s]):
            fails.append(("lands in target", s))
        for t in elems:
            pairs += 1
            if tau(s * t) != img[s] * img[t]:
                fails.append(("product", (s, t)))
            if s.compatible(t) and tau(s.join(t)) != img[s].join(img[t]):
                fails.append(("join", (s, t)))
        if tau(s.inverse()) != img[s].inverse():
            fails.append(("inverse", s))
    # each atom of block j lands on M[l][j] atoms of block l; atom classes follow block order
    M = T.maps[i]
    for a in S.atoms:
        j = S.atom_class_index[a]
        want = tuple(M[l][j] for l in range(len(M)))
        got = R.class_counts(tau.image_mask(a))
        if got != want:
            fails.append(("atom image", (points_of(a), got)))
    return EmbeddingReport(not fails, pairs, exhaustive, fails)


def level_mean(T: AFTower, i: int, x: Sequence, cap: int = DEFAULT_GROUND_CAP) -> MeanVector:
    """Atom values ``x`` on level ``i`` as a mean on the realized monoid."""
    return MeanVector(realize_level(T, i, cap), x)


def check_pullback_against_embedding(T: AFTower, i: int, y: Sequence,
                                     cap: int = DEFAULT_GROUND_CAP) -> Optional[int]:
    """Compare ``x = M^T y`` with ``y`` composed with the realized map on every idempotent.

    Returns the first idempotent mask where they differ, or ``None``.
    """
    tau = embedding(T, i, cap)
    y = tuple(frac(v) for v in y)
    x = pull_back(T, i, y)
    mu_hi = MeanVector(tau.target, y)
    mu_lo = MeanVector(tau.source, x)
    for e in tau.source.idempotents:
        if mu_lo(e) != mu_hi(tau.image_mask(e)):
            return e
    return None
