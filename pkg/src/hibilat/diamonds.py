"""Diamonds, the binomial generators of the Hibi ideal, and partner sets.

Every incomparable pair ``{x, y}`` spans exactly one diamond
``{x, y, x v y, x ^ y}`` and one generator
``x_x * x_y - x_{x v y} * x_{x ^ y}``.  The *partner set* of ``a`` collects
every ``g`` such that ``x_a * x_g`` is a monomial of some generator; its size
is the rank of the Jacobian of the generators at the coordinate point ``p_a``.

The looser co-member count (every ``g`` sharing some diamond with ``a``) is
also exposed so the two readings can be compared; no check relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import Lattice


@dataclass(frozen=True)
class Diamond:
    x: int
    y: int
    top: int
    bottom: int

    @property
    def elements(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.top, self.bottom)


@dataclass(frozen=True)
class BinomialRelation:
    """``x[plus_pair[0]]*x[plus_pair[1]] - x[minus_pair[0]]*x[minus_pair[1]]``."""

    plus_pair: tuple[int, int]
    minus_pair: tuple[int, int]

    def monomials(self):
        return (self.plus_pair, +1), (self.minus_pair, -1)

    def evaluate(self, point) -> object:
        (a, b), (c, d) = self.plus_pair, self.minus_pair
        return point[a] * point[b] - point[c] * point[d]

    def format(self, name=str) -> str:
        (a, b), (c, d) = self.plus_pair, self.minus_pair
        return f"x[{name(a)}]*x[{name(b)}] - x[{name(c)}]*x[{name(d)}]"


@dataclass(frozen=True)
class PartnerSet:
    alpha: int
    partners: frozenset

    def __len__(self):
        return len(self.partners)


def enumerate_diamonds(L: Lattice) -> list[Diamond]:
    """One diamond per incomparable pair ``x < y`` (by index)."""
    ideals, index = L.ideals, L.index
    out = []
    n = len(ideals)
    for i in range(n):
        a = ideals[i]
        for j in range(i + 1, n):
            b = ideals[j]
            if a & ~b and b & ~a:
                out.append(Diamond(i, j, index[a | b], index[a & b]))
    return out


def ideal_generators(L: Lattice) -> list[BinomialRelation]:
    rels = []
    for d in enumerate_diamonds(L):
        rels.append(BinomialRelation((d.x, d.y), (min(d.bottom, d.top), max(d.bottom, d.top))))
    return rels


def _partner_sets(L: Lattice) -> list[set]:
    partners = [set() for _ in range(len(L))]
    for d in enumerate_diamonds(L):
        partners[d.x].add(d.y)
        partners[d.y].add(d.x)
        partners[d.top].add(d.bottom)
        partners[d.bottom].add(d.top)
    return partners


def partner_set(L: Lattice, alpha) -> PartnerSet:
    """Monomial partners of ``alpha`` in the diamond relations.

    Scans the lattice directly rather than the full diamond list: ``g`` is a
    partner iff it is incomparable to ``alpha``, or ``alpha`` is the join
    (meet) of an incomparable pair with meet (join) ``g``.
    """
    a = L.element(alpha)
    ideals = L.ideals
    x = ideals[a]
    out = set()
    n = len(ideals)
    for g in range(n):
        y = ideals[g]
        if x & ~y and y & ~x:
            out.add(g)
    below = [i for i in range(n) if ideals[i] & ~x == 0]
    above = [i for i in range(n) if x & ~ideals[i] == 0]
    for k, i in enumerate(below):
        for j in below[k + 1:]:
            u, v = ideals[i], ideals[j]
            if u & ~v and v & ~u and u | v == x:
                out.add(L.index[u & v])
    for k, i in enumerate(above):
        for j in above[k + 1:]:
            u, v = ideals[i], ideals[j]
            if u & ~v and v & ~u and u & v == x:
                out.add(L.index[u | v])
    return PartnerSet(a, frozenset(out))


def partner_count_all(L: Lattice) -> list[int]:
    """``|E_a|`` for every element, from one sweep over all diamonds."""
    return [len(s) for s in _partner_sets(L)]


def partner_sets_all(L: Lattice) -> list[frozenset]:
    return [frozenset(s) for s in _partner_sets(L)]


def comember_count_all(L: Lattice) -> list[int]:
    """Number of distinct elements sharing at least one diamond with each element."""
    mates = [set() for _ in range(len(L))]
    for d in enumerate_diamonds(L):
        four = d.elements
        for e in four:
            mates[e].update(four)
    return [len(m - {i}) for i, m in enumerate(mates)]


def incomparable_pair_count(L: Lattice) -> int:
    """Brute-force count from the order relation alone."""
    n = len(L)
    leq = L.leq
    return sum(1 for i in range(n) for j in range(i + 1, n) if not leq(i, j) and not leq(j, i))
