"""Finite posets given by their cover relations.

Elements are stored in a fixed canonical order (natural sort of the
identifiers) and subsets of a poset are Python ints used as bitsets over
that order: bit ``i`` stands for ``poset.elements[i]``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import (
    CycleDetected,
    DuplicateElement,
    InvalidInput,
    NoUniqueMinimum,
    RedundantCover,
    SizeLimitExceeded,
    UnknownElement,
)

DEFAULT_MAX_IDEALS = 2**20


def element_sort_key(x):
    """Natural sort key: digit runs compare numerically (``a2 < a10``)."""
    s = str(x)
    parts = tuple((1, int(t)) if t.isdigit() else (0, t) for t in re.split(r"(\d+)", s))
    return parts, s


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class PosetSpec:
    """Unvalidated poset as read from a file.

    ``root`` optionally names an element that plays the role of the lattice
    minimum in a join-irreducible poset that includes it.
    """

    name: str
    elements: Sequence[Hashable]
    covers: Sequence[tuple[Hashable, Hashable]] = ()
    root: Hashable | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "PosetSpec":
        try:
            elements = list(data["elements"])
        except (KeyError, TypeError):
            raise InvalidInput("poset JSON needs an 'elements' list") from None
        covers = []
        for pair in data.get("covers", []):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InvalidInput(f"cover {pair!r} is not a [lo, hi] pair")
            covers.append((pair[0], pair[1]))
        return cls(str(data.get("name", "")), elements, covers, data.get("root"))

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "elements": list(self.elements),
            "covers": [list(c) for c in self.covers],
        }
        if self.root is not None:
            out["root"] = self.root
        return out


@dataclass(frozen=True)
class OrderIdeal:
    mask: int
    members: frozenset = field(compare=False)

    def __len__(self):
        return len(self.members)


class Poset:
    """A validated finite poset.

    Construct through :func:`validate_poset` or :meth:`Poset.from_covers`.
    ``down[i]`` and ``up[i]`` are bitsets of the principal down/up sets
    (both contain ``i``); ``lower[i]``/``upper[i]`` hold the covers only.
    """

    __slots__ = ("name", "elements", "index", "covers", "lower", "upper", "down", "up")

    def __init__(self, name, elements, covers, lower, upper, down, up):
        self.name = name
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.covers = covers
        self.lower = lower
        self.upper = upper
        self.down = down
        self.up = up

    @classmethod
    def from_covers(cls, elements: Iterable, covers: Iterable = (), name: str = "") -> "Poset":
        return validate_poset(PosetSpec(name, list(elements), list(covers)))

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        cov = ", ".join(f"{self.elements[a]}<{self.elements[b]}" for a, b in self.covers)
        return f"Poset({self.name!r}, [{', '.join(map(str, self.elements))}], {{{cov}}})"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self):
        return hash((self.elements, self.covers))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def leq(self, a, b) -> bool:
        i, j = self._idx(a), self._idx(b)
        return bool(self.down[j] >> i & 1)

    def _idx(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r} in poset {self.name!r}") from None

    def mask_of(self, names: Iterable) -> int:
        m = 0
        for x in names:
            m |= 1 << self._idx(x)
        return m

    def names_of(self, mask: int) -> list:
        return [self.elements[i] for i in bits(mask)]

    def is_ideal(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def minimal(self) -> list[int]:
        return [i for i in range(len(self.elements)) if self.lower[i] == 0]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self.elements)) if self.upper[i] == 0]

    def leq_table(self):
        """Boolean matrix ``t[i][j]`` = element i <= element j."""
        n = len(self.elements)
        return [[bool(self.down[j] >> i & 1) for j in range(n)] for i in range(n)]

    def cover_names(self) -> list[tuple]:
        return [(self.elements[a], self.elements[b]) for a, b in self.covers]

    def hasse_neighbors(self, i: int) -> int:
        return self.lower[i] | self.upper[i]

    def to_spec(self) -> PosetSpec:
        return PosetSpec(self.name, list(self.elements), self.cover_names())

    def subposet(self, names: Iterable, name: str | None = None) -> "Poset":
        """Induced subposet; covers are recomputed from the induced order."""
        keep = sorted({self._idx(x) for x in names})
        covers = []
        for b in keep:
            below = [a for a in keep if a != b and self.down[b] >> a & 1]
            for a in below:
                if not any(c != a and self.down[c] >> a & 1 for c in below):
                    covers.append((self.elements[a], self.elements[b]))
        return Poset.from_covers([self.elements[i] for i in keep], covers,
                                 self.name if name is None else name)

    def without(self, x) -> "Poset":
        i = self._idx(x)
        return self.subposet([e for j, e in enumerate(self.elements) if j != i])

    def with_root(self, root) -> "Poset":
        """Adjoin a new minimum ``root`` below every minimal element."""
        if root in self.index:
            raise DuplicateElement(f"root {root!r} already an element")
        covers = self.cover_names() + [(root, self.elements[i]) for i in self.minimal()]
        return Poset.from_covers(list(self.elements) + [root], covers, self.name)


def validate_poset(spec: PosetSpec) -> Poset:
    """Check a :class:`PosetSpec` and precompute its order relation."""
    raw = list(spec.elements)
    seen = set()
    for e in raw:
        if e in seen:
            raise DuplicateElement(f"duplicate element {e!r}")
        seen.add(e)
    elements = tuple(sorted(raw, key=element_sort_key))
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)

    pairs = []
    pair_set = set()
    for lo, hi in spec.covers:
        for x in (lo, hi):
            if x not in index:
                raise UnknownElement(f"cover ({lo!r}, {hi!r}) names unknown element {x!r}")
        if lo == hi:
            raise CycleDetected(f"cover ({lo!r}, {hi!r}) is a loop")
        p = (index[lo], index[hi])
        if p in pair_set:
            raise RedundantCover(f"cover ({lo!r}, {hi!r}) listed twice")
        pair_set.add(p)
        pairs.append(p)

    lower = [0] * n
    upper = [0] * n
    for a, b in pairs:
        lower[b] |= 1 << a
        upper[a] |= 1 << b

    # Kahn's algorithm; leftover vertices lie on or above a cycle
    indeg = [len(bits(lower[i])) for i in range(n)]
    queue = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while queue:
        a = queue.popleft()
        order.append(a)
        for b in bits(upper[a]):
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if len(order) < n:
        left = set(range(n)) - set(order)
        a, b = next((a, b) for a, b in sorted(pairs) if a in left and b in left)
        raise CycleDetected(
            f"covers contain a cycle through ({elements[a]!r}, {elements[b]!r})")

    down = [0] * n
    for b in order:
        m = 1 << b
        for a in bits(lower[b]):
            m |= down[a]
        down[b] = m
    up = [0] * n
    for a in reversed(order):
        m = 1 << a
        for b in bits(upper[a]):
            m |= up[b]
        up[a] = m

    for a, b in sorted(pairs):
        others = lower[b] & ~(1 << a)
        for c in bits(others):
            if down[c] >> a & 1:
                raise RedundantCover(
                    f"cover ({elements[a]!r}, {elements[b]!r}) is implied via {elements[c]!r}")

    return Poset(spec.name, elements, tuple(sorted(pairs)), tuple(lower), tuple(upper),
                 tuple(down), tuple(up))


def ideal_masks(poset: Poset, max_ideals: int | None = DEFAULT_MAX_IDEALS) -> list[int]:
    """All order ideals as bitsets, sorted by size then lexicographically.

    Ideals are grown one level at a time by adding an element all of whose
    lower covers are already present.
    """
    n = len(poset)
    level = {0}
    out = [0]
    for _ in range(n):
        nxt = set()
        for m in level:
            for i in range(n):
                if not m >> i & 1 and poset.lower[i] & ~m == 0:
                    nxt.add(m | 1 << i)
        if not nxt:
            break
        out.extend(sorted(nxt, key=bits))
        if max_ideals is not None and len(out) > max_ideals:
            raise SizeLimitExceeded(
                f"poset {poset.name!r} has more than {max_ideals} order ideals")
        level = nxt
    return out


def enumerate_order_ideals(poset: Poset, max_ideals: int | None = DEFAULT_MAX_IDEALS
                           ) -> list[OrderIdeal]:
    return [OrderIdeal(m, frozenset(poset.names_of(m))) for m in ideal_masks(poset, max_ideals)]


def _connected(n: int, edges: list[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(i) for i in range(n)}) <= 1


def hasse_is_tree(poset: Poset) -> bool:
    """True iff the undirected Hasse graph is connected and acyclic."""
    n = len(poset)
    if n == 0:
        return False
    return len(poset.covers) == n - 1 and _connected(n, list(poset.covers))


def unique_minimum(poset: Poset) -> int:
    mins = poset.minimal()
    if len(mins) != 1:
        raise NoUniqueMinimum(f"poset {poset.name!r} has {len(mins)} minimal elements")
    return mins[0]


def max_degree_except_root(poset: Poset) -> int:
    root = unique_minimum(poset)
    degrees = [len(bits(poset.hasse_neighbors(i))) for i in range(len(poset)) if i != root]
    return max(degrees, default=0)


def dualize(poset: Poset) -> Poset:
    name = poset.name[:-3] if poset.name.endswith("^op") else poset.name + "^op"
    return Poset.from_covers(poset.elements, [(b, a) for a, b in poset.cover_names()], name)


def chain_poset(n: int, prefix: str = "c") -> Poset:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Poset.from_covers(names, list(zip(names, names[1:])), f"chain{n}")


def antichain_poset(n: int, prefix: str = "a") -> Poset:
    return Poset.from_covers([f"{prefix}{i}" for i in range(1, n + 1)], [], f"antichain{n}")


def disjoint_union(posets: Sequence[Poset], name: str = "") -> Poset:
    """Disjoint union; element ``e`` of the k-th poset becomes ``"k:e"``."""
    elements, covers = [], []
    for k, p in enumerate(posets):
        elements += [f"{k}:{e}" for e in p.elements]
        covers += [(f"{k}:{a}", f"{k}:{b}") for a, b in p.cover_names()]
    return Poset.from_covers(elements, covers, name)
