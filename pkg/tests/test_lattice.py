import numpy as np
import pytest

from conftest import boolean
from hibilat import (
    PosetSpec,
    birkhoff,
    chain,
    chain_product,
    codim,
    dual,
    from_raw,
    ji_count_paper,
    join,
    meet,
    product,
)
from hibilat.errors import NotALattice, NotDistributive, SizeLimitExceeded, UnknownElement
from hibilat.lattice import global_max_size
from hibilat.poset import Poset, antichain_poset, chain_poset


def test_birkhoff_small_cases(example):
    assert len(birkhoff(chain_poset(1))) == 2
    assert len(birkhoff(antichain_poset(3))) == 8
    assert len(example) == 10


def test_join_meet_examples(example, b2):
    bottom = b2.element([])
    for x in range(len(b2)):
        assert join(b2, bottom, x) == x
        assert meet(b2, bottom, x) == bottom
    assert b2.members(join(b2, "a", "b")) == ["a", "b"]
    assert meet(b2, "a", "b") == bottom
    assert example.members(join(example, "3", ["2", "4"])) == ["2", "3", "4"]
    with pytest.raises(UnknownElement):
        join(example, "3", "nope")


def test_example_counting_convention(example, b2):
    for n in range(1, 7):
        assert ji_count_paper(chain(n)) == n
        assert codim(chain(n)) == 0
    assert ji_count_paper(b2) == 3 and codim(b2) == 1
    assert ji_count_paper(example) == 5 and codim(example) == 5


def test_products():
    b2 = product(chain(2), chain(2))
    assert len(b2) == 4
    assert len(product(chain(3), chain(2))) == 6
    b3 = product(chain(2), chain(2), chain(2))
    assert len(b3) == 8 and ji_count_paper(b3) == 4
    assert len(chain(1)) == 1 and len(product(chain(1), chain(3))) == 3


def test_product_is_componentwise():
    L = product(chain(3), chain(2))
    G = chain_product([3, 2])
    # both realise the grid; compare order matrices up to the canonical ordering
    assert sorted(L.leq_matrix.sum(axis=1)) == sorted(G.leq_matrix.sum(axis=1))


def test_size_cap(monkeypatch):
    with pytest.raises(SizeLimitExceeded):
        birkhoff(antichain_poset(5), max_size=31)
    monkeypatch.setenv("LATTICE_MAX_SIZE", "16")
    assert global_max_size() == 16
    with pytest.raises(SizeLimitExceeded):
        chain_product([2, 2, 2, 2, 2])


def test_lattice_laws_and_chains(example):
    for L in (example, boolean(3), chain_product([3, 4]), chain(5)):
        n = len(L)
        J, M = L.join_table, L.meet_table
        x = np.arange(n)
        assert np.array_equal(M[J[:, :, None], x[None, None, :]], J[M[:, None, :], M[None, :, :]])
        assert np.array_equal(M[x[:, None], J], np.broadcast_to(x[:, None], (n, n)))
        assert {len(c) for c in L.maximal_chains()} == {L.ji_count_paper}
        assert L.chain_length_range() == (L.ji_count_paper, L.ji_count_paper)
        assert L.ideals[0] == 0 and L.ideals[-1] == L.jposet.full_mask


def test_m3_and_n5_rejected():
    m3 = PosetSpec("M3", list("0abc1"), [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
    with pytest.raises(NotDistributive) as e:
        from_raw(m3)
    assert len(e.value.witness) == 3
    n5 = PosetSpec("N5", list("0abc1"), [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    with pytest.raises(NotDistributive):
        from_raw(n5)
    bowtie = PosetSpec("bow", list("abcd"), [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    with pytest.raises(NotALattice):
        from_raw(bowtie)


def test_raw_example_figure(example, example_raw):
    jp = example_raw.jposet
    assert sorted(jp.elements) == ["2", "3", "4", "5"]
    assert sorted(jp.cover_names()) == [("2", "4"), ("2", "5")]
    assert len(example_raw) == 10
    # same ideals in the same canonical order as the join-irreducible form
    assert example_raw.ideals == example.ideals
    assert example_raw.label(example_raw.element(["2", "3"])) == "6"


def test_birkhoff_roundtrip_is_identity(example):
    for L in (example, boolean(3), chain_product([2, 4])):
        jis = [e for e in range(len(L)) if len(L.lower_covers[e]) == 1]
        assert sorted(L.ideals[e] for e in jis) == sorted(L.jposet.down)


def test_dual_bijection(example):
    Ld, perm = dual(example)
    assert len(Ld) == len(example)
    for a in range(len(example)):
        for b in range(len(example)):
            assert example.leq(a, b) == Ld.leq(perm[b], perm[a])


def test_element_resolution(example):
    assert example.element("1") == 0
    assert example.element("3") == example.element(["3"])
    assert example.element(["2", "4"]) == example.element("4")
    assert example.element(["2", "3", "4"]) == example.element("{2,3,4}")
    with pytest.raises(UnknownElement):
        example.element(["4"])  # not an ideal


def test_from_ji_root_must_be_unique_minimum():
    from hibilat import from_ji_spec
    from hibilat.errors import LatticeError

    with pytest.raises(LatticeError):
        from_ji_spec(PosetSpec("bad", ["r", "a"], [], root="r"))
    L = from_ji_spec(PosetSpec("ok", ["r", "a"], [("r", "a")], root="r"))
    assert len(L) == 2 and L.label(0) == "r"


def test_leq_block_matches_leq(example):
    sel = [0, 3, 5, 9]
    blk = example.leq_block(sel)
    assert all(blk[i, j] == example.leq(a, b) for i, a in enumerate(sel) for j, b in enumerate(sel))


def test_chain_product_names():
    L = chain_product([3, 2])
    assert L.name == "c(3)xc(2)"
    assert sorted(L.jposet.elements) == ["a1", "a2", "b1"]
    assert isinstance(L.jposet, Poset)
