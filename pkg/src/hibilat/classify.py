"""Tree, honest and square lattices; chain-product decomposition; pruning
and the structural lemmas about pruned square lattices.

The join-irreducible poset ``J`` used here includes the lattice minimum as
its root (see :meth:`Lattice.j_poset`).  For a square lattice ``J`` is a
union of chains (branches) glued at the root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

from .diamonds import partner_sets_all
from .errors import (
    InternalConsistencyError,
    NoUniquePredecessor,
    NotMaximalJoinIrreducible,
    NotSquare,
)
from .lattice import Lattice, birkhoff
from .poset import bits, hasse_is_tree, max_degree_except_root
from .smooth import CheckResult


@dataclass
class ChainDecomposition:
    """``iso[a]`` gives the chain positions of element ``a`` (0 = bottom of
    each factor); ``branches`` lists the join-irreducibles of each factor."""

    factor_sizes: list[int]
    branches: list[list]
    iso: list[tuple[int, ...]]

    @property
    def sorted_sizes(self) -> list[int]:
        return sorted(self.factor_sizes)


@dataclass
class PruneResult:
    beta: object
    sublattice: Lattice
    complement: list[int]
    embedding: list[int]


@dataclass
class LemmaReport:
    """Per-element rows ``(alpha label, lhs, rhs)`` of a pruning inequality."""

    name: str
    beta: object
    rows: list[tuple[str, int, int]]
    violations: list = field(default_factory=list)
    equality_deviations: list = field(default_factory=list)

    def __bool__(self):
        return not self.violations

    def to_dict(self) -> dict:
        return {"lemma": self.name, "beta": str(self.beta), "checked": len(self.rows),
                "violations": self.violations,
                "equality_deviations": self.equality_deviations}


# predicates

def is_honest(L: Lattice) -> bool:
    """Every cover of ``J`` (root included) is a cover of ``L``."""
    J = L.j_poset()
    root = J.index[L.root_name]

    def element(j):
        return 0 if j == root else L.principal(J.elements[j])

    for lo, hi in J.covers:
        a, b = element(lo), element(hi)
        if not L.leq(a, b) or a == b:
            return False
        if any(z not in (a, b) and L.leq(a, z) and L.leq(z, b) for z in range(len(L))):
            return False
    return True


def is_tree_lattice(L: Lattice) -> bool:
    return hasse_is_tree(L.j_poset())


def is_square_lattice(L: Lattice) -> bool:
    J = L.j_poset()
    return hasse_is_tree(J) and max_degree_except_root(J) <= 2


def verify_tree_honest_equivalence(L: Lattice) -> bool:
    return is_tree_lattice(L) == is_honest(L)


def unique_lower_cover_in_tree(L: Lattice) -> bool:
    """In a tree lattice every non-root element of ``J`` has one lower cover."""
    J = L.j_poset()
    root = J.index[L.root_name]
    return all(len(bits(J.lower[i])) == 1 for i in range(len(J)) if i != root)


# chain products

def _branches(L: Lattice) -> list[list[int]]:
    """Branch chains of the join-irreducible poset, walked up from each
    minimal element (the neighbours of the root)."""
    jp = L.jposet
    out = []
    for start in jp.minimal():
        chain = [start]
        while jp.upper[chain[-1]]:
            ups = bits(jp.upper[chain[-1]])
            if len(ups) != 1:
                raise NotSquare(f"{L.name!r}: {jp.elements[chain[-1]]!r} has {len(ups)} upper covers")
            chain.append(ups[0])
        out.append(chain)
    return out


def decompose_chain_product(L: Lattice) -> ChainDecomposition:
    if not is_square_lattice(L):
        raise NotSquare(f"{L.name!r} is not a square lattice")
    branches = _branches(L)
    masks = [sum(1 << p for p in br) for br in branches]
    sizes = [len(br) + 1 for br in branches]
    iso = [tuple(bin(m & bm).count("1") for bm in masks) for m in L.ideals]

    if prod(sizes) != len(L) or len(set(iso)) != len(L):
        raise InternalConsistencyError(f"{L.name!r}: chain decomposition is not a bijection")
    coords = np.array(iso, dtype=np.int64).reshape(len(L), len(sizes))
    order = np.all(coords[:, None, :] <= coords[None, :, :], axis=2)
    if not np.array_equal(L.leq_matrix, order):
        raise InternalConsistencyError("decomposition does not preserve order")
    if not np.array_equal(coords[L.join_table], np.maximum(coords[:, None], coords[None, :])):
        raise InternalConsistencyError("decomposition does not preserve join")
    if not np.array_equal(coords[L.meet_table], np.minimum(coords[:, None], coords[None, :])):
        raise InternalConsistencyError("decomposition does not preserve meet")
    jp = L.jposet
    return ChainDecomposition(sizes, [[jp.elements[p] for p in br] for br in branches], iso)


# pruning

def _beta_index(L: Lattice, beta) -> int:
    jp = L.jposet
    if beta in jp.index:
        return jp.index[beta]
    a = L.element(beta)
    for p in range(len(jp)):
        if L.ideals[a] == jp.down[p]:
            return p
    raise NotMaximalJoinIrreducible(f"{beta!r} is not a proper join-irreducible of {L.name!r}")


def prune(L: Lattice, beta) -> PruneResult:
    """Sublattice of ideals avoiding the maximal join-irreducible ``beta``."""
    jp = L.jposet
    p = _beta_index(L, beta)
    if jp.upper[p]:
        raise NotMaximalJoinIrreducible(
            f"{jp.elements[p]!r} is not maximal among the join-irreducibles of {L.name!r}")
    name = jp.elements[p]
    sub_poset = jp.without(name)
    sub = birkhoff(sub_poset, root=L.root, name=f"{L.name}-{name}")
    embedding = [L.index[jp.mask_of(sub_poset.names_of(m))] for m in sub.ideals]
    sub.relabel([L.label(a) for a in embedding])

    up = L.upset(L.principal(name))
    image = set(embedding)
    rest = [i for i in range(len(L)) if i not in image]
    if up != rest:
        raise InternalConsistencyError(f"up-set of {name!r} differs from L minus the pruning")
    if sub.ji_count_paper != L.ji_count_paper - 1:
        raise InternalConsistencyError("pruning did not remove exactly one join-irreducible")
    return PruneResult(name, sub, up, embedding)


def maximal_join_irreducibles(L: Lattice) -> list:
    jp = L.jposet
    return [jp.elements[p] for p in jp.maximal()]


def verify_lemma_chain(L: Lattice, beta) -> CheckResult:
    """``L`` minus the pruning equals the up-set of ``beta``, and the pruning
    has one join-irreducible fewer."""
    pr = prune(L, beta)
    wit = []
    up = L.upset(L.principal(pr.beta))
    if pr.complement != up:
        wit.append("complement is not the up-set")
    if len(L) != len(pr.sublattice) + len(pr.complement):
        wit.append("sizes do not add up")
    if pr.sublattice.ji_count_paper != L.ji_count_paper - 1:
        wit.append("join-irreducible count did not drop by one")
    return CheckResult("lemma-chain", not wit, wit)


def verify_bijection_lemma(L: Lattice, beta) -> CheckResult:
    """``x -> x v beta`` maps the up-set of ``beta_1`` inside the pruning
    isomorphically onto the up-set of ``beta`` in ``L``, where ``beta_1`` is
    the unique join-irreducible covered by ``beta`` (the root if ``beta`` is
    minimal)."""
    pr = prune(L, beta)
    jp = L.jposet
    p = jp.index[pr.beta]
    lower = bits(jp.lower[p])
    if len(lower) > 1:
        raise NoUniquePredecessor(
            f"{pr.beta!r} covers {len(lower)} join-irreducibles in {L.name!r}")
    sub = pr.sublattice
    if lower:
        beta1 = jp.elements[lower[0]]
        source = sub.upset(sub.principal(beta1))
    else:
        beta1 = L.root_name
        source = list(range(len(sub)))
    b = L.principal(pr.beta)
    target = L.upset(b)
    phi = {x: L.join(pr.embedding[x], b) for x in source}
    wit = []
    if sorted(phi.values()) != target or len(set(phi.values())) != len(source):
        wit.append("x -> x v beta is not a bijection onto the up-set of beta")
    else:
        image = [phi[x] for x in source]
        bad = np.argwhere(sub.leq_block(source) != L.leq_block(image))
        wit += [(sub.label(source[i]), sub.label(source[j])) for i, j in bad[:10]]
    return CheckResult("bijection", not wit, wit,
                       {"beta": str(pr.beta), "beta1": str(beta1),
                        "size": len(target)})


def _require_square(L: Lattice):
    if not is_square_lattice(L):
        raise NotSquare(f"{L.name!r} is not a square lattice")


def _partner_difference(L: Lattice, pr: PruneResult):
    big = partner_sets_all(L)
    small = partner_sets_all(pr.sublattice)
    out = {}
    for x, a in enumerate(pr.embedding):
        inside = {pr.embedding[g] for g in small[x]}
        if not inside <= big[a]:
            raise InternalConsistencyError("partner inside the pruning lost in L")
        out[a] = (len(big[a]) - len(small[x]), big[a] - inside)
    return out


def verify_lemma_inequality(L: Lattice, beta) -> LemmaReport:
    """``|E_a(L)| - |E_a(L_beta)| >= |L| - |L_beta| - 1`` for each ``a`` in
    the pruning."""
    _require_square(L)
    pr = prune(L, beta)
    rhs = len(L) - len(pr.sublattice) - 1
    rows, bad = [], []
    for a, (diff, _) in _partner_difference(L, pr).items():
        rows.append((L.label(a), diff, rhs))
        if diff < rhs:
            bad.append({"alpha": L.label(a), "difference": diff, "bound": rhs})
    return LemmaReport("lemma-inequality", pr.beta, rows, bad)


def verify_lemma_greater(L: Lattice, beta) -> LemmaReport:
    """``|E_a(L)| - |E_a(L_beta)| >= |B_beta| - 1`` for each ``a`` in the
    pruning, re-deriving the diamond for every ``b_1`` in ``B_beta`` other
    than ``b = min{g in B_beta : g >= a}``.

    With ``C`` the branch of ``beta``:

    * ``b_1 > b``: ``z = (b_1 minus C) u (a n C)``; diamond ``{a, z, b, b_1}``
      with ``a`` at the bottom and ``b_1`` on top.
    * ``b_1 < b``: ``a`` and ``b_1`` incomparable, ``a v b_1 = b``.
    * otherwise: ``a`` and ``b_1`` incomparable, diamond on ``a v b_1``.

    In every case ``b_1`` is a monomial partner of ``a``.
    """
    _require_square(L)
    pr = prune(L, beta)
    jp = L.jposet
    p = jp.index[pr.beta]
    branch = next(br for br in _branches(L) if br[-1] == p)
    cmask = sum(1 << q for q in branch)
    B = pr.complement
    bound = len(B) - 1
    diffs = _partner_difference(L, pr)
    ideals, index = L.ideals, L.index
    rows, bad, deviations = [], [], []

    def diamond(x, y, top, bot):
        return (ideals[x] & ~ideals[y] and ideals[y] & ~ideals[x]
                and L.join(x, y) == top and L.meet(x, y) == bot)

    for a in pr.embedding:
        diff, new_partners = diffs[a]
        above = [g for g in B if L.leq(a, g)]
        b = min(above, key=lambda g: bin(ideals[g]).count("1"))
        if any(not L.leq(b, g) for g in above) or b != L.join(a, L.principal(pr.beta)):
            bad.append({"alpha": L.label(a), "error": "b is not the minimum of B above alpha"})
            continue
        for b1 in B:
            if b1 == b:
                continue
            if L.leq(b, b1):
                z = index.get((ideals[b1] & ~cmask) | (ideals[a] & cmask))
                ok = z is not None and diamond(z, b, b1, a)
                case = "b1 > b"
            elif L.leq(b1, b):
                ok = diamond(a, b1, b, L.meet(a, b1))
                case = "b1 < b"
            else:
                ok = diamond(a, b1, L.join(a, b1), L.meet(a, b1))
                case = "incomparable"
            if not ok or b1 not in new_partners:
                bad.append({"alpha": L.label(a), "b1": L.label(b1), "case": case})
        rows.append((L.label(a), diff, bound))
        if diff < bound:
            bad.append({"alpha": L.label(a), "difference": diff, "bound": bound})
        elif diff > bound:
            deviations.append({"alpha": L.label(a), "difference": diff, "bound": bound})
    return LemmaReport("lemma-greater", pr.beta, rows, bad, deviations)


def classification_report(L: Lattice) -> dict:
    """Summary used by the JSON interfaces."""
    square = is_square_lattice(L)
    violations = []
    factors = None
    if square:
        factors = decompose_chain_product(L).factor_sizes
        for beta in maximal_join_irreducibles(L):
            for rep in (verify_lemma_inequality(L, beta), verify_lemma_greater(L, beta)):
                violations += [dict(v, lemma=rep.name, beta=str(beta)) for v in rep.violations]
    return {"lattice": L.name, "tree": is_tree_lattice(L), "honest": is_honest(L),
            "square": square, "factors": factors, "lemma_violations": violations}
