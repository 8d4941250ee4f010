"""Distributive lattices as lattices of order ideals.

A :class:`Lattice` is built from the poset of its *proper* join-irreducibles
(``jposet``, every join-irreducible except the minimum).  Its elements are
the order ideals of that poset, ordered by inclusion, with union as join and
intersection as meet.

Counting convention: the lattice minimum is counted as a join-irreducible
in every user-facing count, so ``ji_count_paper(L) == len(L.jposet) + 1``
and ``codim(L) == len(L) - ji_count_paper(L)``.  With this convention a chain
has codimension 0 and every maximal chain of ``L`` has ``ji_count_paper(L)``
elements.  Nothing else in the package adds or subtracts this 1.
"""

from __future__ import annotations

import os
from functools import cached_property
from typing import Hashable, Iterable, Iterator

import numpy as np

from .errors import (
    DuplicateElement,
    InternalConsistencyError,
    NotALattice,
    NotDistributive,
    UnknownElement,
)
from .poset import (
    OrderIdeal,
    Poset,
    PosetSpec,
    bits,
    chain_poset,
    disjoint_union,
    dualize,
    ideal_masks,
    validate_poset,
)

GLOBAL_MAX_SIZE = 4096


def global_max_size() -> int:
    """Cap on lattice size for generated families; ``LATTICE_MAX_SIZE`` overrides."""
    env = os.environ.get("LATTICE_MAX_SIZE")
    return int(env) if env else GLOBAL_MAX_SIZE


def _set_label(names) -> str:
    return "{" + ",".join(map(str, names)) + "}"


class Lattice:
    """Distributive lattice of the order ideals of ``jposet``.

    Elements are addressed by their index in ``ideals`` (bottom is 0, top is
    the last index).  ``root`` is an optional display name for the minimum.
    """

    def __init__(self, jposet: Poset, root: Hashable | None = None,
                 labels: dict[int, str] | None = None, max_size: int | None = None,
                 name: str | None = None):
        self.jposet = jposet
        self.name = jposet.name if name is None else name
        self.root = root
        cap = global_max_size() if max_size is None else max_size
        self.ideals = tuple(ideal_masks(jposet, cap))
        self.index = {m: i for i, m in enumerate(self.ideals)}
        self.labels = self._default_labels() if labels is None else self._check_labels(labels)
        self._label_index = {s: i for i, s in enumerate(self.labels)}

    def _default_labels(self) -> tuple[str, ...]:
        jp = self.jposet
        principal = {jp.down[p]: str(jp.elements[p]) for p in range(len(jp))}
        out = []
        for m in self.ideals:
            if m == 0:
                out.append(self.root_name)
            elif m in principal:
                out.append(principal[m])
            else:
                out.append(_set_label(jp.names_of(m)))
        if len(set(out)) < len(out):
            out = [_set_label(jp.names_of(m)) for m in self.ideals]
        return tuple(out)

    def _check_labels(self, labels: dict[int, str]) -> tuple[str, ...]:
        out = list(self._default_labels())
        for i, s in labels.items():
            out[i] = str(s)
        if len(set(out)) < len(out):
            raise DuplicateElement(f"element labels of {self.name!r} are not unique")
        return tuple(out)

    def relabel(self, labels) -> None:
        labels = tuple(map(str, labels))
        if len(labels) != len(self.ideals) or len(set(labels)) != len(labels):
            raise DuplicateElement(f"need {len(self.ideals)} distinct labels for {self.name!r}")
        self.labels = labels
        self._label_index = {s: i for i, s in enumerate(labels)}

    def __len__(self):
        return len(self.ideals)

    def __repr__(self):
        return f"Lattice({self.name!r}, |L|={len(self)}, |J|={self.ji_count_paper})"

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.ideals) - 1

    # element addressing

    def element(self, key) -> int:
        """Resolve ``key`` to an element index.

        Accepts an index, an element label, the name of a proper
        join-irreducible (its principal ideal), the root name (the bottom),
        an :class:`OrderIdeal`, or a collection of join-irreducible names.
        """
        n = len(self.ideals)
        if isinstance(key, OrderIdeal):
            key = key.members
        if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
            if 0 <= key < n:
                return int(key)
            raise UnknownElement(f"element index {key} out of range for {self.name!r}")
        if isinstance(key, (set, frozenset, list, tuple)):
            try:
                mask = self.jposet.mask_of(key)
            except UnknownElement:
                raise UnknownElement(f"{key!r} names unknown join-irreducibles") from None
            if mask not in self.index:
                raise UnknownElement(f"{sorted(map(str, key))} is not an order ideal")
            return self.index[mask]
        if isinstance(key, str) and key in self._label_index:
            return self._label_index[key]
        if key in self.jposet.index:
            return self.index[self.jposet.down[self.jposet.index[key]]]
        if self.root is not None and key == self.root:
            return 0
        raise UnknownElement(f"unknown lattice element {key!r} in {self.name!r}")

    def members(self, i: int) -> list:
        return self.jposet.names_of(self.ideals[i])

    def label(self, i: int) -> str:
        return self.labels[i]

    # order structure

    def leq(self, a: int, b: int) -> bool:
        return self.ideals[a] & ~self.ideals[b] == 0

    def comparable(self, a: int, b: int) -> bool:
        x, y = self.ideals[a], self.ideals[b]
        return x & ~y == 0 or y & ~x == 0

    def join(self, a: int, b: int) -> int:
        return self.index[self.ideals[a] | self.ideals[b]]

    def meet(self, a: int, b: int) -> int:
        return self.index[self.ideals[a] & self.ideals[b]]

    def upset(self, a: int) -> list[int]:
        m = self.ideals[a]
        return [i for i, x in enumerate(self.ideals) if m & ~x == 0]

    def principal(self, p) -> int:
        """Index of the principal ideal of the proper join-irreducible ``p``."""
        jp = self.jposet
        return self.index[jp.down[jp.index[p]]]

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        jp = self.jposet
        out = []
        for m in self.ideals:
            out.append(tuple(self.index[m | 1 << p] for p in range(len(jp))
                             if not m >> p & 1 and jp.lower[p] & ~m == 0))
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        lower = [[] for _ in self.ideals]
        for a, ups in enumerate(self.upper_covers):
            for b in ups:
                lower[b].append(a)
        return tuple(tuple(x) for x in lower)

    def covers(self) -> list[tuple[int, int]]:
        return [(a, b) for a, ups in enumerate(self.upper_covers) for b in ups]

    def maximal_chains(self) -> Iterator[tuple[int, ...]]:
        """Depth-first enumeration of maximal chains, bottom to top."""
        ups = self.upper_covers
        stack = [(0,)]
        while stack:
            path = stack.pop()
            nxt = ups[path[-1]]
            if not nxt:
                yield path
            for b in reversed(nxt):
                stack.append(path + (b,))

    def chain_length_range(self) -> tuple[int, int]:
        """Fewest and most elements on a maximal chain, by dynamic programming
        over the cover graph (no enumeration)."""
        ups = self.upper_covers
        indeg = [len(x) for x in self.lower_covers]
        lo = [len(ups) + 1] * len(ups)
        hi = [0] * len(ups)
        lo[0] = hi[0] = 1
        ready = [0]
        tops = []
        while ready:
            a = ready.pop()
            if not ups[a]:
                tops.append(a)
            for b in ups[a]:
                lo[b] = min(lo[b], lo[a] + 1)
                hi[b] = max(hi[b], hi[a] + 1)
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
        return min(lo[t] for t in tops), max(hi[t] for t in tops)

    # tables for exhaustive checks

    def leq_block(self, elements) -> np.ndarray:
        """``out[i, j] = leq(elements[i], elements[j])`` as a boolean matrix."""
        masks = [self.ideals[e] for e in elements]
        if self.jposet.full_mask < 2**62:
            m = np.array(masks, dtype=np.int64)
            return (m[:, None] & ~m[None, :]) == 0
        return np.array([[x & ~y == 0 for y in masks] for x in masks], dtype=bool).reshape(
            len(masks), len(masks))

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        out = self.leq_block(range(len(self.ideals)))
        out.setflags(write=False)
        return out

    @cached_property
    def join_table(self) -> np.ndarray:
        return self._table(lambda x, y: x | y)

    @cached_property
    def meet_table(self) -> np.ndarray:
        return self._table(lambda x, y: x & y)

    def _table(self, op) -> np.ndarray:
        ideals, index = self.ideals, self.index
        n = len(ideals)
        if self.jposet.full_mask < 2**62:
            m = np.array(ideals, dtype=np.int64)
            order = np.argsort(m)
            res = op(m[:, None], m[None, :])
            t = order[np.searchsorted(m[order], res)].astype(np.int32)
            if not np.array_equal(m[t], res):
                raise InternalConsistencyError("ideals are not closed under the lattice operations")
            t.setflags(write=False)
            return t
        t = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            x = ideals[a]
            t[a] = [index[op(x, y)] for y in ideals]
        t.setflags(write=False)
        return t

    # join-irreducibles and counts

    @property
    def proper_join_irreducibles(self) -> list[int]:
        """Principal ideals of ``jposet``, in the poset's canonical order."""
        jp = self.jposet
        return [self.index[jp.down[p]] for p in range(len(jp))]

    @property
    def join_irreducibles_with_bottom(self) -> list[int]:
        return [0] + self.proper_join_irreducibles

    @property
    def ji_count_paper(self) -> int:
        return len(self.jposet) + 1

    @property
    def codim(self) -> int:
        return len(self.ideals) - self.ji_count_paper

    @property
    def dimension(self) -> int:
        return self.ji_count_paper

    @property
    def root_name(self) -> str:
        """Name used for the minimum inside :meth:`j_poset`."""
        if self.root is not None:
            return str(self.root)
        name = "0"
        while name in self.jposet.index:
            name += "'"
        return name

    def j_poset(self) -> Poset:
        """Join-irreducibles including the minimum, which covers every
        minimal proper join-irreducible."""
        return self.jposet.with_root(self.root_name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ji_poset": self.jposet.to_spec().to_dict(),
            "elements": [self.members(i) for i in range(len(self))],
            "labels": list(self.labels),
            "paper_ji_count": self.ji_count_paper,
            "codim": self.codim,
        }


def birkhoff(jposet: Poset, root: Hashable | None = None, max_size: int | None = None,
             name: str | None = None) -> Lattice:
    """Lattice of order ideals of the proper join-irreducible poset ``jposet``."""
    return Lattice(jposet, root=root, max_size=max_size, name=name)


def from_ji_spec(spec: PosetSpec, max_size: int | None = None) -> Lattice:
    """Build from a join-irreducible poset file.

    When ``spec.root`` is set it names the lattice minimum, which must be the
    unique minimum of the given poset; it is removed before :func:`birkhoff`.
    """
    poset = validate_poset(spec)
    if spec.root is None:
        return birkhoff(poset, max_size=max_size)
    if spec.root not in poset.index:
        raise UnknownElement(f"root {spec.root!r} is not an element")
    r = poset.index[spec.root]
    if poset.minimal() != [r]:
        raise NotALattice(f"root {spec.root!r} is not the unique minimum of {spec.name!r}")
    return birkhoff(poset.without(spec.root), root=spec.root, max_size=max_size)


def join(L: Lattice, a, b) -> int:
    return L.join(L.element(a), L.element(b))


def meet(L: Lattice, a, b) -> int:
    return L.meet(L.element(a), L.element(b))


def ji_count_paper(L: Lattice) -> int:
    return L.ji_count_paper


def codim(L: Lattice) -> int:
    return L.codim


def chain(n: int) -> Lattice:
    """The chain lattice with ``n`` elements (``n >= 1``)."""
    if n < 1:
        raise ValueError("chain(n) needs n >= 1")
    return birkhoff(chain_poset(n - 1), name=f"c({n})")


def product(*lattices: Lattice, max_size: int | None = None) -> Lattice:
    """Direct product, realised through the disjoint union of the factors'
    join-irreducible posets.  Element ``e`` of factor ``k`` is renamed
    ``"k:e"``."""
    name = "x".join(L.name for L in lattices)
    return birkhoff(disjoint_union([L.jposet for L in lattices], name), max_size=max_size)


def chain_product(sizes: Iterable[int], max_size: int | None = None) -> Lattice:
    """Product of chains; factor ``k`` contributes the join-irreducibles
    ``a1 < a2 < ...`` with letter ``a``, ``b``, ... by position."""
    sizes = list(sizes)
    name = "x".join(f"c({n})" for n in sizes)
    elements, covers = [], []
    for k, n in enumerate(sizes):
        prefix = chr(ord("a") + k) if k < 26 else f"f{k}_"
        names = [f"{prefix}{i}" for i in range(1, n)]
        elements += names
        covers += list(zip(names, names[1:]))
    return birkhoff(Poset.from_covers(elements, covers, name), max_size=max_size)


def dual(L: Lattice) -> tuple[Lattice, list[int]]:
    """Order dual of ``L`` together with the element bijection.

    The dual is the ideal lattice of the dual join-irreducible poset; ideal
    ``I`` of ``L`` corresponds to its complement.  Returns ``(L_op, perm)``
    with ``perm[i]`` the dual element of ``i``.
    """
    Ld = birkhoff(dualize(L.jposet), name=f"{L.name}^op")
    full = L.jposet.full_mask
    perm = [Ld.index[full ^ m] for m in L.ideals]
    return Ld, perm


def _lub_table(p: Poset, up: bool) -> list[list[int]]:
    n = len(p)
    cones = p.up if up else p.down
    table = [[-1] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            common = cones[a] & cones[b]
            best = [c for c in bits(common) if common & ~cones[c] == 0]
            if not best:
                kind = "join" if up else "meet"
                raise NotALattice(
                    f"{p.elements[a]!r} and {p.elements[b]!r} have no {kind} in {p.name!r}")
            table[a][b] = table[b][a] = best[0]
    return table


def from_raw(spec: PosetSpec) -> Lattice:
    """Ingest a lattice drawn as a Hasse diagram.

    Checks that all joins and meets exist and that the distributive identity
    holds, extracts the proper join-irreducibles (elements with exactly one
    lower cover) and rebuilds the lattice with :func:`birkhoff`, keeping the
    original labels.
    """
    p = validate_poset(spec)
    n = len(p)
    if n == 0:
        raise NotALattice("empty poset is not a lattice")
    jn = _lub_table(p, up=True)
    mt = _lub_table(p, up=False)
    for x in range(n):
        for y in range(n):
            jxy = jn[x][y]
            for z in range(n):
                if mt[jxy][z] != jn[mt[x][z]][mt[y][z]]:
                    w = (p.elements[x], p.elements[y], p.elements[z])
                    raise NotDistributive(
                        f"(x v y) ^ z != (x ^ z) v (y ^ z) for (x, y, z) = {w}", witness=w)

    jis = [i for i in range(n) if len(bits(p.lower[i])) == 1]
    jposet = p.subposet([p.elements[i] for i in jis], name=spec.name)
    bottom = p.minimal()[0]
    L = birkhoff(jposet, root=p.elements[bottom])

    raw_of = {}
    for x in range(n):
        below = [p.elements[j] for j in jis if p.down[x] >> j & 1]
        m = jposet.mask_of(below)
        if m not in L.index or L.index[m] in raw_of:
            raise InternalConsistencyError(f"Birkhoff map fails at {p.elements[x]!r}")
        raw_of[L.index[m]] = x
    if len(raw_of) != len(L):
        raise InternalConsistencyError("Birkhoff map is not onto the ideal lattice")
    for a in range(n):
        for b in range(n):
            if L.leq(a, b) != bool(p.down[raw_of[b]] >> raw_of[a] & 1):
                raise InternalConsistencyError("Birkhoff map is not an order isomorphism")
    labels = {i: str(p.elements[x]) for i, x in raw_of.items()}
    return Lattice(jposet, root=p.elements[bottom], labels=labels)
