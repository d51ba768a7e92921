"""Paradoxical pairs in the affine monoid and the finite back-and-forth bijection."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Mapping, Optional, Sequence

from .affine import AffineMap, PeriodicSet
from .bim import FiniteBIM
from .errors import BadPencil, BadWitness, InternalInvariantViolation, NotBijective, PartitionMismatch


@dataclass(frozen=True)
class ParadoxCertificate:
    kind: str  # "weak" or "strong"
    a: AffineMap
    b: AffineMap
    words: tuple = ()  # generator words for a and b, when found by search

    def verify(self) -> bool:
        """Re-check the defining conditions on residue classes."""
        weak = self.a.dom.is_full and self.b.dom.is_full and self.a.ran.disjoint(self.b.ran)
        if self.kind == "weak":
            return weak
        return weak and (self.a.ran | self.b.ran).is_full

    @property
    def is_strong(self) -> bool:
        return ParadoxCertificate("strong", self.a, self.b).verify()

    def to_json(self) -> dict:
        out = {"kind": self.kind, "a": self.a.to_json(), "b": self.b.to_json()}
        if self.words:
            out["words"] = [list(w) for w in self.words]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ParadoxCertificate":
        words = tuple(tuple(w) for w in obj.get("words", ()))
        return cls(obj["kind"], AffineMap.from_json(obj["a"]), AffineMap.from_json(obj["b"]), words)


def _evaluate_word(gens: Sequence[AffineMap], word: tuple) -> AffineMap:
    # the rightmost letter acts first
    out = AffineMap.identity()
    for k in word:
        out = out * gens[k]
    return out


def detect_weak(generators: Sequence[AffineMap], max_word: int) -> Optional[ParadoxCertificate]:
    """Least pair of words (shortlex) giving total maps with disjoint ranges.

    ``None`` only means nothing was found up to ``max_word`` letters.
    """
    total = []
    for length in range(1, max_word + 1):
        for word in iproduct(range(len(generators)), repeat=length):
            w = _evaluate_word(generators, word)
            if w.dom.is_full:
                total.append((word, w))
    key = lambda ww: (len(ww[0]), ww[0])  # noqa: E731
    best = None
    for (u, a), (v, b) in iproduct(total, total):
        if u == v or not a.ran.disjoint(b.ran):
            continue
        k = (key((u, a)), key((v, b)))
        if best is None or k < best[0]:
            best = (k, u, a, v, b)
    if best is None:
        return None
    _, u, a, v, b = best
    cert = ParadoxCertificate("weak", a, b, (u, v))
    if not cert.verify():
        raise InternalInvariantViolation("search produced an invalid certificate")
    return cert


@dataclass
class Amplification:
    certificate: ParadoxCertificate
    family: list = field(default_factory=list)  # the sets a^i f a^-i, i = 0..m


def bike_amplify(a: AffineMap, pencil: Sequence[AffineMap]) -> Amplification:
    """Turn a pencil from 1 into the complement of r(a) into a weak pair ``(a^m, b)``.

    ``b`` is the join of ``a^(i-1) b_i``; its range sits inside the sets
    ``a^i f a^-i`` for ``i < m``, which are pairwise disjoint and disjoint
    from the range of ``a^m``.
    """
    m = len(pencil)
    if m == 0:
        raise BadPencil("empty pencil")
    if not a.dom.is_full:
        raise BadPencil("a must have full domain")
    f = a.ran.complement()
    doms = PeriodicSet.empty()
    for k, bi in enumerate(pencil):
        if not bi.ran.leq(f):
            raise BadPencil(f"range of pencil element {k} is not inside the complement of r(a)")
        if not doms.disjoint(bi.dom):
            raise BadPencil(f"pencil element {k} overlaps an earlier domain")
        doms = doms | bi.dom
    if not doms.is_full:
        raise BadPencil("pencil domains do not cover N")

    family = [a.power(i).restrict(f).ran for i in range(m + 1)]
    for i in range(len(family)):
        for j in range(i):
            if not family[i].disjoint(family[j]):
                raise InternalInvariantViolation(f"a^{i} f a^-{i} meets a^{j} f a^-{j}")
    b = AffineMap.zero()
    for i, bi in enumerate(pencil):
        b = b.join(a.power(i) * bi)
    am = a.power(m)
    if not am.ran.leq(family[0].complement()) or any(not am.ran.disjoint(s) for s in family[:m]):
        raise InternalInvariantViolation("r(a^m) meets the family")
    cert = ParadoxCertificate("weak", am, b)
    if not cert.verify():
        raise InternalInvariantViolation("amplified pair fails verification")
    return Amplification(cert, family)


def arden_upgrade(cert: ParadoxCertificate, witness: AffineMap) -> ParadoxCertificate:
    if not cert.verify():
        raise BadWitness("the input certificate does not verify")
    if not witness.dom.is_full:
        raise BadWitness("witness must have full domain")
    if witness.ran != cert.a.ran.complement():
        raise BadWitness(f"witness range {witness.ran} is not the complement of {cert.a.ran}")
    out = ParadoxCertificate("strong", cert.a, witness)
    if not out.verify():
        raise InternalInvariantViolation("upgraded certificate fails verification")
    return out


# -- finite back-and-forth ----------------------------------------------------

@dataclass
class KuratowskiResult:
    bijection: dict
    pieces: dict  # word (tuple of letters, rightmost first) -> {m: q}

    def words(self) -> list:
        return sorted(self.pieces)


def _check_bijection(f: Mapping, dom: set, cod: set, name: str):
    if set(f) != dom or set(f.values()) != cod or len(set(f.values())) != len(f):
        raise NotBijective(f"{name} is not a bijection between the given sets")


def _apply_word(word, maps, x):
    for letter in reversed(word):
        f = maps[letter]
        if x not in f:
            return None
        x = f[x]
    return x


def kuratowski_bijection(E, M, N, phi: Mapping, E2, P, Q, psi: Mapping, alpha: Mapping) -> KuratowskiResult:
    """A bijection ``M -> Q`` assembled from restrictions of ``alpha``, ``phi`` and ``psi``.

    Pairs ``{m, phi(m)}`` and ``{p, psi(p)}`` are joined by ``alpha`` into
    alternating cycles; going once round each cycle sends every ``E``-pair to
    the next ``E2``-pair, and ``m`` to the ``Q``-element of that pair.
    """
    E, M, N, E2, P, Q = (set(s) for s in (E, M, N, E2, P, Q))
    if M | N != E or M & N:
        raise PartitionMismatch("M and N do not partition E")
    if P | Q != E2 or P & Q:
        raise PartitionMismatch("P and Q do not partition E'")
    _check_bijection(phi, M, N, "phi")
    _check_bijection(psi, P, Q, "psi")
    _check_bijection(alpha, E, E2, "alpha")

    phi_inv = {v: k for k, v in phi.items()}
    psi_inv = {v: k for k, v in psi.items()}
    alpha_inv = {v: k for k, v in alpha.items()}
    maps = {"alpha": dict(alpha), "phi": dict(phi), "psi": dict(psi)}

    def partner(x):  # other element of the E-pair
        return phi[x] if x in M else phi_inv[x]

    def partner2(y):  # other element of the E2-pair
        return psi[y] if y in P else psi_inv[y]

    out, pieces = {}, {}
    visited = set()
    for m0 in sorted(M, key=repr):
        if m0 in visited:
            continue
        exit_el = m0
        while True:
            m = exit_el if exit_el in M else partner(exit_el)
            if m in visited:
                break
            visited.add(m)
            y = alpha[exit_el]
            q = y if y in Q else psi[y]
            word = ("alpha",) if exit_el == m else ("alpha", "phi")
            if y in P:
                word = ("psi",) + word
            out[m] = q
            pieces.setdefault(word, {})[m] = q
            # leave the E2-pair through its other element, re-enter E, leave through the partner
            exit_el = partner(alpha_inv[partner2(y)])

    if set(out) != M or set(out.values()) != Q or len(set(out.values())) != len(out):
        raise InternalInvariantViolation("constructed map is not a bijection M -> Q")
    for word, piece in pieces.items():
        for x, y in piece.items():
            if _apply_word(word, maps, x) != y:
                raise InternalInvariantViolation(f"piece {word} does not re-evaluate at {x!r}")
    return KuratowskiResult(out, pieces)


def kuratowski_counterexample(S: FiniteBIM) -> Optional[tuple]:
    """First ``(e1, e2, f1, f2)`` violating the property, or ``None``."""
    idem = S.idempotents
    rep = {e: S.d_rep(e) for e in idem}
    halves = [(e1, e2) for e1 in idem for e2 in idem if e1 & e2 == 0 and rep[e1] == rep[e2]]
    for e1, e2 in halves:
        for f1, f2 in halves:
            if rep[e1 | e2] == rep[f1 | f2] and rep[e1] != rep[f2]:
                return (e1, e2, f1, f2)
    return None


def check_kuratowski_property(S: FiniteBIM) -> bool:
    return kuratowski_counterexample(S) is None
