from itertools import combinations

import pytest

from conftest import boolean
from hibilat import (
    chain,
    chain_product,
    dual,
    enumerate_diamonds,
    ideal_generators,
    partner_count_all,
    partner_set,
)
from hibilat.diamonds import comember_count_all, incomparable_pair_count, partner_sets_all
from hibilat.errors import UnknownElement
from hibilat.harness import all_posets
from hibilat.lattice import birkhoff


def test_diamond_counts(example, b2):
    assert enumerate_diamonds(chain(5)) == []
    [d] = enumerate_diamonds(b2)
    assert {b2.label(d.x), b2.label(d.y)} == {"a", "b"}
    assert b2.members(d.top) == ["a", "b"] and b2.members(d.bottom) == []
    assert len(enumerate_diamonds(example)) == incomparable_pair_count(example)


def test_diamond_invariants(example):
    for d in enumerate_diamonds(example):
        assert not example.comparable(d.x, d.y)
        assert example.join(d.x, d.y) == d.top and example.meet(d.x, d.y) == d.bottom
        assert len(set(d.elements)) == 4
        # the incomparable pair is the only one inside the four elements
        inc = [(u, v) for u, v in combinations(d.elements, 2) if not example.comparable(u, v)]
        assert len(inc) == 1


def test_generators(b2):
    [g] = ideal_generators(b2)
    assert g.format(b2.label) == "x[a]*x[b] - x[0]*x[{a,b}]"
    assert ideal_generators(chain(4)) == []
    grid = chain_product([3, 2])
    # (1,0)|(0,1), (2,0)|(0,1), (2,0)|(1,1)
    assert len(ideal_generators(grid)) == incomparable_pair_count(grid) == 3


def test_generators_vanish_at_coordinate_points(example):
    gens = ideal_generators(example)
    for a in range(len(example)):
        point = [0] * len(example)
        point[a] = 7
        assert all(g.evaluate(point) == 0 for g in gens)


def test_partner_sets(example, b3):
    for a in range(5):
        assert len(partner_set(chain(5), a)) == 0
    atom = b3.element("a")
    names = {b3.label(g) for g in partner_set(b3, atom).partners}
    assert names == {"b", "c", "{b,c}", "{a,b,c}"}
    p3 = partner_set(example, "3")
    assert sorted(example.members(g) for g in p3.partners) == [
        ["2"], ["2", "4"], ["2", "4", "5"], ["2", "5"]]
    with pytest.raises(UnknownElement):
        partner_set(example, "zz")


def test_partner_count_all_examples(b2, b3):
    assert partner_count_all(chain(5)) == [0] * 5
    assert partner_count_all(b2) == [1, 1, 1, 1]
    counts = partner_count_all(b3)
    for a in range(len(b3)):
        if len(b3.members(a)) in (1, 2):
            assert counts[a] == 4


def _lattices_up_to(n):
    for k in range(n + 1):
        for p in all_posets(k, labeled=True):
            yield birkhoff(p)


def test_sweep_agrees_with_direct_scan_and_is_symmetric():
    for L in _lattices_up_to(4):
        sweep = partner_sets_all(L)
        for a in range(len(L)):
            assert sweep[a] == partner_set(L, a).partners
            assert a not in sweep[a]
            for g in sweep[a]:
                assert a in sweep[g]


def test_rank_bound_and_dual_invariance_exhaustive():
    for L in _lattices_up_to(5):
        counts = partner_count_all(L)
        assert max(counts) <= L.codim
        assert len(enumerate_diamonds(L)) == incomparable_pair_count(L)
        Ld, perm = dual(L)
        dc = partner_count_all(Ld)
        assert all(counts[a] == dc[perm[a]] for a in range(len(L)))


def test_comember_reading_is_looser(example):
    loose = comember_count_all(example)
    tight = partner_count_all(example)
    assert all(x >= y for x, y in zip(loose, tight))
    assert any(x > y for x, y in zip(loose, tight))


def test_two_chain_products_reach_codim_exactly():
    for n in range(2, 7):
        for m in range(2, 7):
            L = chain_product([n, m])
            assert min(partner_count_all(L)) == L.codim
    assert boolean(3).codim == 4
