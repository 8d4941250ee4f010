import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hibilat import (
    FamilySpec,
    example_lattice,
    generate_family,
    run_campaign,
    smoothness_report,
)
from hibilat.errors import InvalidInput, SizeLimitExceeded
from hibilat.harness import (
    ALL_CHECKS,
    CHECKS,
    all_posets,
    chain_product_sizes,
    labeled_posets,
    natural_posets,
    random_trees,
    run_lattices,
)
from hibilat.poset import hasse_is_tree


@pytest.mark.parametrize("n, expected", list(enumerate([1, 1, 3, 19, 219, 4231])))
def test_labeled_poset_counts(n, expected):
    assert sum(1 for _ in labeled_posets(n)) == expected


@pytest.mark.parametrize("n, expected", list(enumerate([1, 1, 2, 7, 40, 357])))
def test_naturally_labeled_poset_counts(n, expected):
    assert sum(1 for _ in natural_posets(n)) == expected


def test_generated_posets_are_distinct():
    seen = {frozenset(c) for c in labeled_posets(4)}
    assert len(seen) == 219


def test_all_posets_two_elements():
    sizes = sorted(len(L) for L in generate_family(FamilySpec("all-posets", n=2)))
    assert sizes == [3, 4]


def test_n_min_range():
    spec = FamilySpec("all-posets", n=3, n_min=1)
    assert sum(1 for _ in generate_family(spec)) == 1 + 2 + 7
    assert spec.to_dict()["n_min"] == 1


def test_chain_product_family():
    assert chain_product_sizes(8) == [(2,), (3,), (4,), (5,), (6,), (7,), (8,),
                                      (2, 2), (2, 3), (2, 4), (2, 2, 2)]
    sizes = [len(L) for L in generate_family(FamilySpec("chain-products", n=8))]
    assert sizes == [2, 3, 4, 5, 6, 7, 8, 4, 6, 8, 8]


@given(st.integers(2, 60))
def test_chain_product_sizes_are_complete(limit):
    got = chain_product_sizes(limit)
    assert len(set(got)) == len(got)
    for t in got:
        assert list(t) == sorted(t) and min(t) >= 2
        p = 1
        for f in t:
            p *= f
        assert p <= limit


def test_random_trees_reproducible():
    a = [p.covers for p in random_trees(10, 3, 3, seed=42, max_size=4096)]
    b = [p.covers for p in random_trees(10, 3, 3, seed=42, max_size=4096)]
    c = [p.covers for p in random_trees(10, 3, 3, seed=43, max_size=4096)]
    assert a == b
    assert a != c


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_trees_are_trees_under_cap(seed):
    spec = FamilySpec("random-trees", count=3, seed=seed, max_size=200)
    for L in generate_family(spec):
        assert len(L) <= 200
        assert hasse_is_tree(L.j_poset())


def test_chain_products_over_cap():
    with pytest.raises(SizeLimitExceeded):
        list(generate_family(FamilySpec("chain-products", n=100, max_size=64)))


def test_size_cap_from_environment(monkeypatch):
    monkeypatch.setenv("LATTICE_MAX_SIZE", "16")
    assert FamilySpec("all-posets", n=3).cap == 16
    with pytest.raises(SizeLimitExceeded):
        list(generate_family(FamilySpec("chain-products", n=32)))


def test_unknown_family_and_check():
    with pytest.raises(InvalidInput):
        list(generate_family(FamilySpec("lattices-of-doom", n=2)))
    with pytest.raises(InvalidInput):
        run_lattices([], ["no-such-check"], {})


def test_all_posets_names_stable():
    names = [p.name for p in all_posets(3)]
    assert names == [f"P3.{k}" for k in range(7)]


def test_campaign_small_family_passes():
    rep = run_campaign(FamilySpec("all-posets", n=4, n_min=0))
    assert rep.ok, rep.violations
    assert rep.lattices == 1 + 1 + 2 + 7 + 40
    assert set(rep.counts) == set(ALL_CHECKS)
    for c in rep.counts.values():
        assert sum(c.values()) == rep.lattices


def test_campaign_json_deterministic():
    spec = FamilySpec("random-trees", count=8, seed=3, max_size=300)
    a = run_campaign(spec).to_json()
    b = run_campaign(spec).to_json()
    assert a == b
    data = json.loads(a)
    assert data["ok"] is True
    assert data["family"]["seed"] == 3


def test_every_check_registered():
    assert set(ALL_CHECKS) <= set(CHECKS)


def test_example_smoothness_report():
    rep = smoothness_report(example_lattice())
    assert "3" in rep.singular
    assert not rep.all_smooth
    assert all(p.rank == p.E for p in rep.points)
