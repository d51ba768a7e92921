"""Invariant means on finite Boolean inverse monoids, computed exactly.

A mean is determined by its values on atoms, and D-related atoms must get
the same value, so the unknowns are one rational per atom D-class.  The only
remaining constraint is normalization at the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Union

from . import bim
from .bim import FiniteBIM, Pencil
from .errors import InvalidPencil, NotPiecewiseFactorizable, ZeroMass
from .exact import affine_dimension, fmt, frac, rank, vertices
from .pbij import PartialBijection, SubsetIdempotent, points_of

DEFAULT_VERTEX_CAP = 64


@dataclass(frozen=True)
class MeanVector:
    """Values on atom D-classes of ``monoid``, in :attr:`FiniteBIM.atom_classes` order."""

    monoid: FiniteBIM
    values: tuple
    normalized: bool = True

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.values) != len(self.monoid.atom_classes):
            raise ValueError(
                f"expected {len(self.monoid.atom_classes)} class values, got {len(self.values)}"
            )

    def __call__(self, e) -> Fraction:
        if isinstance(e, SubsetIdempotent):
            e = e.mask
        elif isinstance(e, PartialBijection):
            e = e.dom_mask
        idx = self.monoid.atom_class_index
        return sum((self.values[idx[a]] for a in self.monoid.atoms_below(e)), Fraction(0))

    def as_dict(self) -> dict:
        return {f"g{k}": fmt(v) for k, v in enumerate(self.values)}

    def __eq__(self, other):
        if not isinstance(other, MeanVector):
            return NotImplemented
        return self.monoid is other.monoid and self.values == other.values

    def __hash__(self):
        return hash(self.values)


@dataclass
class MeanSolution:
    status: str  # "unique", "polytope" or "infeasible"
    witness: Optional[MeanVector]
    vertices: list
    dim: int
    truncated: bool = False
    constraint_system: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.as_dict() if self.witness else None,
            "vertices": [v.as_dict() for v in self.vertices],
            "dim": self.dim,
            "truncated": self.truncated,
        }


def constraint_system(S: FiniteBIM) -> tuple[list, list]:
    """Rows of ``A`` and ``b`` for ``A x = b`` over the class variables."""
    counts = S.class_counts(S.full_mask)
    return [list(counts)], [Fraction(1)]


def solve(S: FiniteBIM, cap: int = DEFAULT_VERTEX_CAP) -> MeanSolution:
    A, b = constraint_system(S)
    system = {
        "variables": [f"g{k}" for k in range(len(A[0]))],
        "equations": [{"coeffs": row, "rhs": fmt(rhs)} for row, rhs in zip(A, b)],
    }
    verts, consistent, truncated = vertices(A, b, cap)
    if not consistent or not verts:
        return MeanSolution("infeasible", None, [], -1, False, system)
    nvars = len(A[0])
    dim = nvars - rank(A) if truncated else affine_dimension(verts)
    # the barycentre is positive wherever some vertex is, so it is faithful when possible
    bary = [sum(col, Fraction(0)) / len(verts) for col in zip(*verts)]
    witness = MeanVector(S, bary)
    vecs = [MeanVector(S, v) for v in verts]
    status = "unique" if dim == 0 else "polytope"
    return MeanSolution(status, witness, vecs, dim, truncated, system)


# -- axioms -------------------------------------------------------------------

@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def fail(self, name: str, *witnesses):
        self.violations.append((name, witnesses))


def _conj_mask(s: PartialBijection, e: int) -> int:
    """Mask of ``s e s^{-1}``."""
    out = 0
    for x, y in s.graph:
        if (e >> x) & 1:
            out |= 1 << y
    return out


def check_axioms(S: FiniteBIM, mu: Union[MeanVector, Callable], normalized: bool = True) -> AxiomReport:
    """Check every mean identity exhaustively over ``S``.

    ``mu`` may be a :class:`MeanVector` or any function on idempotent masks,
    so that candidate functions not built from class values can be audited.
    """
    rep = AxiomReport()
    idem = S.idempotents
    val = {e: Fraction(mu(e)) for e in idem}
    one = S.full_mask

    if val[0] != 0:
        rep.fail("mu(0) = 0", 0)
    if normalized and val[one] != 1:
        rep.fail("normalization mu(1) = 1", val[one])
    for e in idem:
        if val[e] < 0:
            rep.fail("non-negativity", points_of(e))
    for s in S.elements:
        rep.checked += 1
        if val[s.dom_mask] != val[s.ran_mask]:
            rep.fail("IM1 mu(d(s)) = mu(r(s))", s)
    total = Fraction(1) if normalized else val[one]
    for e in idem:
        ce = one & ~e
        if ce in val and val[ce] != total - val[e]:
            rep.fail("complement law mu(~e) = 1 - mu(e)", points_of(e))
        for f in idem:
            rep.checked += 1
            j, m = e | f, e & f
            if m == 0 and val[j] != val[e] + val[f]:
                rep.fail("IM2 additivity on orthogonal pairs", points_of(e), points_of(f))
            if val[j] != val[e] + val[f] - val[m]:
                rep.fail("inclusion-exclusion", points_of(e), points_of(f))
            if e & ~f == 0 and val[e] > val[f]:
                rep.fail("monotonicity", points_of(e), points_of(f))
    null = [e for e in idem if val[e] == 0]
    null_set = set(null)
    for e in null:
        for f in idem:
            if e & f not in null_set:
                rep.fail("null set closed under meets", points_of(e), points_of(f))
        for f in null:
            if e | f not in null_set:
                rep.fail("null set closed under joins", points_of(e), points_of(f))
        for s in S.elements:
            if _conj_mask(s, e) not in null_set:
                rep.fail("null set closed under conjugation", points_of(e), s)
    return rep


def is_faithful(S: FiniteBIM, mu: MeanVector) -> bool:
    return all(mu(a) > 0 for a in S.atoms)


def null_ideal(S: FiniteBIM, mu: MeanVector) -> list:
    return [e for e in S.idempotents if mu(e) == 0]


def restrict(S: FiniteBIM, nu: MeanVector, e) -> MeanVector:
    """The mean on the local monoid ``eSe`` obtained by rescaling ``nu`` by ``1/nu(e)``."""
    e = bim.as_mask(S, e)
    r = nu(e)
    if r == 0:
        raise ZeroMass(f"the mean vanishes on {points_of(e)}")
    L = bim.local_monoid(S, e)
    values = [nu(bim.embed_local_mask(S, e, cls[0])) / r for cls in L.atom_classes]
    return MeanVector(L, values)


# -- unit-conjugation invariant functions -------------------------------------

def is_piecewise_factorizable(S: FiniteBIM) -> bool:
    """Every element restricted to an atom of its domain lies below a unit."""
    below_units = {(a, g.restrict(a)) for g in S.units for a in S.atoms}
    for s in S.elements:
        for a in S.atoms_below(s.dom_mask):
            if (a, s.restrict(a)) not in below_units:
                return False
    return True


@dataclass
class UnitInvarianceResult:
    ok: bool
    reason: str = ""
    mean: Optional[MeanVector] = None
    axioms: Optional[AxiomReport] = None


def check_unit_invariance(S: FiniteBIM, sigma: Union[Mapping, Callable]) -> UnitInvarianceResult:
    """Decide whether ``sigma`` on idempotents extends to an invariant mean.

    ``sigma`` must be normalized, invariant under conjugation by units and
    additive on orthogonal pairs.  When it is, the extension is returned and
    re-audited with :func:`check_axioms`, including IM1 on every element.
    """
    if not is_piecewise_factorizable(S):
        raise NotPiecewiseFactorizable("some element is not a join of unit-times-idempotent pieces")
    if callable(sigma):
        val = {e: frac(sigma(e)) for e in S.idempotents}
    else:
        val = {}
        for k, v in sigma.items():
            key = k.mask if isinstance(k, SubsetIdempotent) else int(k)
            val[key] = frac(v)
    idem = S.idempotents
    missing = [e for e in idem if e not in val]
    if missing:
        return UnitInvarianceResult(False, f"sigma undefined on {points_of(missing[0])}")
    if val[S.full_mask] != 1:
        return UnitInvarianceResult(False, "sigma(1) != 1")
    for g in S.units:
        for e in idem:
            if val[_conj_mask(g, e)] != val[e]:
                return UnitInvarianceResult(False, f"not invariant under conjugation by {g!r}")
    for e in idem:
        for f in idem:
            if e & f == 0 and val[e | f] != val[e] + val[f]:
                return UnitInvarianceResult(False, "not additive on orthogonal pairs")
    mean = MeanVector(S, [val[cls[0]] for cls in S.atom_classes])
    report = check_axioms(S, lambda e: val[e])
    return UnitInvarianceResult(report.ok, "" if report.ok else str(report.first), mean, report)


def large_idempotent_bound(S: FiniteBIM, mu: MeanVector, e, p: Pencil) -> bool:
    """Check ``mu(e) >= 1/len(p)`` for a pencil ``p`` from 1 to ``e``."""
    e = bim.as_mask(S, e)
    if p.target.mask != S.full_mask or p.bound.mask & ~e or not p.is_valid(S) or len(p) == 0:
        raise InvalidPencil("expected a pencil from 1 into e")
    return mu(e) >= Fraction(1, len(p))
