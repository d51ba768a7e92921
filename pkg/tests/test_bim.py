from itertools import product

import pytest

from imean import bim
from imean.bim import Pencil
from imean.errors import CapExceeded, GroundMismatch, NotAnElement, ZeroIdempotent
from imean.pbij import PartialBijection as PB, SubsetIdempotent, popcount

from oracles import all_partial_bijections, all_submonoids, rank_d_related


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matrix_units_close_to_full_symmetric(n):
    S = bim.close(n, bim.matrix_units(n))
    assert set(S.elements) == set(all_partial_bijections(n))
    assert S.size == bim.symmetric_order(n)


def test_small_closures():
    assert bim.close(2, bim.matrix_units(2)).size == 7
    trivial = bim.close(3, [])
    assert trivial.elements == {PB.zero(3), PB.identity(3)}


def test_block_generators_give_direct_product():
    S = bim.close(3, bim.semisimple_generators([1, 2]))
    # direct product oracle: pairs of elements of I_1 and I_2 placed on blocks {0} and {1, 2}
    expected = set()
    for a, b in product(all_partial_bijections(1), all_partial_bijections(2)):
        expected.add(PB(3, list(a.graph) + [(x + 1, y + 1) for x, y in b.graph]))
    assert set(S.elements) == expected and S.size == 14


def test_structured_and_closed_realizations_agree():
    closed = bim.close(4, bim.semisimple_generators([2, 2]))
    structured = bim.semisimple([2, 2])
    assert set(structured.elements) == set(closed.elements)
    assert structured.atom_classes == closed.atom_classes


def test_cap_and_ground_errors():
    with pytest.raises(CapExceeded):
        bim.close(4, bim.matrix_units(4), cap=50)
    with pytest.raises(GroundMismatch):
        bim.close(3, [PB(2)])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_close_is_idempotent(n):
    for S in all_submonoids(n):
        again = bim.close(n, sorted(S.elements))
        assert again.elements == S.elements


@pytest.mark.parametrize("n", [2, 3])
def test_submonoid_axioms(n):
    for S in all_submonoids(n):
        E = set(S.elements)
        assert PB.zero(n) in E and PB.identity(n) in E
        for a in E:
            assert a.inverse() in E
            for b in E:
                assert a * b in E
                if a.compatible(b):
                    assert a.join(b) in E
        idem = set(S.idempotents)
        full = (1 << n) - 1
        for e in idem:
            assert full & ~e in idem
            for f in idem:
                assert e & f in idem and e | f in idem


def test_d_related_examples():
    S = bim.symmetric(3)
    for e, f in product(S.idempotents, repeat=2):
        assert (bim.d_related(S, e, f) is not None) == rank_d_related(e, f)
    w = bim.d_related(S, 0b011, 0b011)
    assert w.d() == w.r() == PB.partial_identity(3, 0b011)
    T = bim.close(3, bim.semisimple_generators([1, 2]))
    assert bim.d_related(T, 0b001, 0b010) is None
    with pytest.raises(NotAnElement):
        bim.d_related(bim.close(3, []), 0b011, 0b001)


def test_d_witness_scan_oracle():
    # every witness returned must be an element with the right domain and range, and the
    # answer must agree with a linear scan of the elements
    for S in all_submonoids(3):
        for e, f in product(S.idempotents, repeat=2):
            scan = any(s.dom_mask == e and s.ran_mask == f for s in S.elements)
            w = S.d_witness(e, f)
            assert (w is not None) == scan
            if w is not None:
                assert w in S.elements and w.dom_mask == e and w.ran_mask == f


def test_j_leq():
    S = bim.symmetric(3)
    for e, f in product(S.idempotents, repeat=2):
        assert bim.j_leq(S, e, f) == (popcount(e) <= popcount(f))
    T = bim.close(3, bim.semisimple_generators([1, 2]))
    assert not bim.j_leq(T, 0b001, 0b010)
    assert bim.j_leq(T, 0b010, 0b110)


def test_d_contained_in_j_everywhere():
    for S in all_submonoids(3):
        for e, f in product(S.idempotents, repeat=2):
            if S.d_witness(e, f) is not None:
                assert bim.j_leq(S, e, f) and bim.j_leq(S, f, e)


def test_d_eq_j():
    for n in range(1, 5):
        assert bim.check_d_eq_j(bim.symmetric(n))
    assert bim.check_d_eq_j(bim.semisimple([1, 2, 3]))
    assert bim.check_d_eq_j(bim.close(4, bim.semisimple_generators([2, 2])))


def test_preceq_examples():
    S = bim.symmetric(3)
    for e in S.idempotents:
        if e:
            p = bim.preceq(S, e, S.full_mask)
            assert p is not None and p.is_valid(S)
    p = bim.preceq(S, S.full_mask, 0b001)
    assert len(p) == 3 and p.is_valid(S)
    assert all(x.ran_mask == 0b001 for x in p.elements)
    with pytest.raises(ZeroIdempotent):
        bim.preceq(S, 0, 0b1)


def test_preceq_reflexive_transitive():
    for S in [bim.symmetric(4), bim.semisimple([1, 3]), bim.close(4, bim.semisimple_generators([2, 2]))]:
        nz = [e for e in S.idempotents if e]
        rel = {(e, f): bim.preceq(S, e, f) is not None for e in nz for f in nz}
        for e in nz:
            assert rel[(e, e)]
        for e, f, g in product(nz, repeat=3):
            if rel[(e, f)] and rel[(f, g)]:
                assert rel[(e, g)]


def test_orthogonalize_pencil(rng):
    S = bim.symmetric(4)
    x = PB(4, [(0, 1), (1, 2)])
    p = Pencil(SubsetIdempotent(4, [0, 1]), (x, x), SubsetIdempotent(4, [1, 2]))
    q = bim.orthogonalize_pencil(S, p)
    assert q.elements == (x,)
    already = bim.preceq(S, S.full_mask, 0b0011)
    assert bim.orthogonalize_pencil(S, already).elements == already.elements
    elems = sorted(S.elements)
    for _ in range(100):
        xs = tuple(rng.choice(elems) for _ in range(rng.randint(1, 4)))
        dom = 0
        for y in xs:
            dom |= y.dom_mask
        bound = 0
        for y in xs:
            bound |= y.ran_mask
        p = Pencil(SubsetIdempotent.from_mask(4, dom), xs, SubsetIdempotent.from_mask(4, bound))
        q = bim.orthogonalize_pencil(S, p)
        assert q.is_valid(S) and q.bound == p.bound
        masks = [y.dom_mask for y in q.elements]
        for i in range(len(masks)):
            for j in range(i):
                assert masks[i] & masks[j] == 0


def test_largeness_and_zero_simplifying():
    for n in range(1, 5):
        S = bim.symmetric(n)
        assert all(bim.is_large(S, e) is not None for e in S.idempotents if e)
        assert bim.is_zero_simplifying(S)
    T = bim.close(2, bim.semisimple_generators([1, 1]))
    assert bim.is_large(T, 0b01) is None
    assert bim.is_large(T, T.full_mask) is not None
    assert not bim.is_zero_simplifying(bim.close(3, bim.semisimple_generators([1, 2])))
    assert bim.is_zero_simplifying(bim.close(1, []))


def test_zero_simplifying_matches_ideal_definition():
    for n in (1, 2, 3):
        for S in all_submonoids(n):
            assert bim.is_zero_simplifying(S) == bim.is_zero_simplifying_by_ideals(S)


def test_ideals_absorb_smaller_idempotents():
    for S in all_submonoids(3):
        for e in S.idempotents:
            if not e:
                continue
            ideal = bim.join_ideal(S, e)
            for f in S.idempotents:
                if f and bim.preceq(S, f, e) is not None:
                    assert PB.partial_identity(3, f) in ideal


def test_local_monoids():
    S = bim.symmetric(3)
    assert bim.local_monoid(S, S.full_mask) is S
    L = bim.local_monoid(bim.close(3, bim.matrix_units(3)), 0b101)
    assert L.size == 7 and set(L.elements) == set(all_partial_bijections(2))
    A = bim.local_monoid(bim.close(3, bim.matrix_units(3)), 0b010)
    assert A.size == 2
    with pytest.raises(ZeroIdempotent):
        bim.local_monoid(S, 0)


def test_from_spec():
    assert bim.from_spec({"semisimple": [2, 1]}).size == 14
    S = bim.from_spec({"ground": 2, "generators": [[[0, 1]], {"graph": [[1, 0]]}]})
    assert S.size == 7
