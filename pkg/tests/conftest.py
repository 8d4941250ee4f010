import pytest

from hibilat import Poset, birkhoff, chain_product, example_lattice, example_raw_lattice


def boolean(n):
    names = [chr(ord("a") + i) for i in range(n)]
    return birkhoff(Poset.from_covers(names, [], f"B{n}"), name=f"B{n}")


def n_poset_lattice():
    p = Poset.from_covers("abcd", [("a", "c"), ("b", "c"), ("b", "d")], "N")
    return birkhoff(p, name="N")


@pytest.fixture
def example():
    return example_lattice()


@pytest.fixture
def example_raw():
    return example_raw_lattice()


@pytest.fixture
def b2():
    return boolean(2)


@pytest.fixture
def b3():
    return boolean(3)


@pytest.fixture
def grid32():
    return chain_product([3, 2])
