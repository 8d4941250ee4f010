"""Lattice families and verification campaigns.

A campaign runs a set of named checks over every lattice of a family and
collects violations with witnesses.  Reports contain no timings or other
run-dependent data, so the JSON is byte-identical for a fixed family.
Internal-consistency failures (:class:`InternalConsistencyError` and
subclasses) are not collected; they propagate and abort the campaign.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import permutations
from math import prod
from typing import Callable, Iterator

import numpy as np

from . import classify, diamonds, smooth
from .errors import InvalidInput, SizeLimitExceeded
from .lattice import Lattice, birkhoff, chain_product, dual, global_max_size
from .poset import Poset, bits

ALL_CHECKS = (
    "theorem-a", "theorem-b", "theorem-c", "tree-honest", "lemma-chain",
    "lemma-inequality", "lemma-greater", "bijection", "birkhoff-roundtrip",
    "oracle-agreement", "rank-structure", "structure", "dual",
)


@dataclass(frozen=True)
class FamilySpec:
    """``kind`` is ``all-posets`` (posets on ``n_min..n`` elements,
    ``n_min`` defaulting to ``n``), ``chain-products`` (factor multisets
    with product ``<= n``) or ``random-trees`` (``count`` samples)."""

    kind: str
    n: int = 0
    count: int = 0
    max_depth: int = 3
    max_branches: int = 3
    seed: int = 0
    labeled: bool = False
    max_size: int | None = None
    n_min: int | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "all-posets":
            d.update(n=self.n, n_min=self.low, labeled=self.labeled)
        elif self.kind == "chain-products":
            d.update(n=self.n)
        elif self.kind == "random-trees":
            d.update(count=self.count, max_depth=self.max_depth,
                     max_branches=self.max_branches, seed=self.seed)
        d["max_size"] = self.cap
        return d

    @property
    def low(self) -> int:
        return self.n if self.n_min is None else self.n_min

    @property
    def cap(self) -> int:
        return global_max_size() if self.max_size is None else self.max_size


# families

def _names(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"p{i}" for i in range(n)]


def _covers_from_down(down: list[int]) -> list[tuple[int, int]]:
    """Transitive reduction of the strict order given by down-set bitsets."""
    out = []
    for b, db in enumerate(down):
        strict = db & ~(1 << b)
        for a in bits(strict):
            if not any(c != a and down[c] >> a & 1 for c in bits(strict & ~(1 << a))):
                out.append((a, b))
    return out


def natural_posets(n: int) -> Iterator[list[tuple[int, int]]]:
    """Cover lists of all posets on ``0..n-1`` whose order extends ``<``.

    Element ``k`` is added on top of a poset on ``0..k-1`` with a strict
    down-set that is an order ideal of it; every poset arises from some
    linear extension, so this is exhaustive up to relabeling.
    """
    def grow(down: list[int]) -> Iterator[list[int]]:
        k = len(down)
        if k == n:
            yield down
            return
        # order ideals of the current poset
        ideals = {0}
        frontier = {0}
        while frontier:
            nxt = set()
            for m in frontier:
                for i in range(k):
                    if not m >> i & 1 and down[i] & ~(1 << i) & ~m == 0:
                        nxt.add(m | 1 << i)
            frontier = nxt - ideals
            ideals |= nxt
        for m in sorted(ideals, key=lambda m: (bin(m).count("1"), bits(m))):
            yield from grow(down + [m | 1 << k])

    for down in grow([]):
        yield _covers_from_down(down)


def labeled_posets(n: int) -> Iterator[list[tuple[int, int]]]:
    """Every labeled poset on ``0..n-1``, as a sorted cover list."""
    seen = set()
    out = []
    for covers in natural_posets(n):
        for perm in permutations(range(n)):
            key = tuple(sorted((perm[a], perm[b]) for a, b in covers))
            if key not in seen:
                seen.add(key)
                out.append(key)
    yield from (list(k) for k in sorted(out, key=lambda c: (len(c), c)))


def all_posets(n: int, labeled: bool = False) -> Iterator[Poset]:
    names = _names(n)
    gen = labeled_posets(n) if labeled else natural_posets(n)
    for k, covers in enumerate(gen):
        yield Poset.from_covers(names, [(names[a], names[b]) for a, b in covers],
                                f"P{n}.{k}")


def chain_product_sizes(limit: int) -> list[tuple[int, ...]]:
    """Multisets of factors ``>= 2`` with product ``<= limit``."""
    out = []

    def rec(prefix: tuple[int, ...], smallest: int, room: int):
        for f in range(smallest, room + 1):
            t = prefix + (f,)
            out.append(t)
            rec(t, f, room // f)

    rec((), 2, limit)
    return sorted(out, key=lambda t: (len(t), t))


def _forest_ideals(children: dict[int, list[int]], roots: list[int]) -> int:
    return prod(1 + _forest_ideals(children, children[r]) for r in roots)


def random_tree_poset(rng: random.Random, max_depth: int, max_branches: int,
                      name: str) -> tuple[Poset, int]:
    """A rooted tree (root = lattice minimum, not included) and its ideal count."""
    children: dict[int, list[int]] = {0: []}
    frontier = [(0, 0)]
    nxt_id = 1
    while frontier:
        node, depth = frontier.pop(0)
        if depth >= max_depth:
            continue
        k = rng.randint(1 if node == 0 else 0, max_branches)
        for _ in range(k):
            children[nxt_id] = []
            children[node].append(nxt_id)
            frontier.append((nxt_id, depth + 1))
            nxt_id += 1
    names = {i: f"t{i}" for i in children if i}
    covers = [(names[a], names[b]) for a, kids in children.items() if a for b in kids]
    size = _forest_ideals(children, children[0])
    return Poset.from_covers(list(names.values()), covers, name), size


def random_trees(count: int, max_depth: int, max_branches: int, seed: int,
                 max_size: int) -> Iterator[Poset]:
    """Seeded random tree posets; samples over ``max_size`` ideals are redrawn."""
    rng = random.Random(seed)
    for k in range(count):
        for _ in range(1000):
            poset, size = random_tree_poset(rng, max_depth, max_branches, f"T{seed}.{k}")
            if size <= max_size:
                break
        else:
            raise SizeLimitExceeded("could not draw a tree lattice under the size cap")
        yield poset


def generate_family(spec: FamilySpec) -> Iterator[Lattice]:
    cap = spec.cap
    if spec.kind == "all-posets":
        for n in range(spec.low, spec.n + 1):
            for p in all_posets(n, spec.labeled):
                yield birkhoff(p, max_size=cap)
    elif spec.kind == "chain-products":
        if spec.n > cap:
            raise SizeLimitExceeded(f"chain products up to {spec.n} exceed the cap {cap}")
        for sizes in chain_product_sizes(spec.n):
            yield chain_product(sizes, max_size=cap)
    elif spec.kind == "random-trees":
        for p in random_trees(spec.count, spec.max_depth, spec.max_branches, spec.seed, cap):
            yield birkhoff(p, max_size=cap)
    else:
        raise InvalidInput(f"unknown family kind {spec.kind!r}")


# checks; each returns (status, violations, observations)

Outcome = tuple[str, list, dict]


def _result(ok: bool, witnesses=(), obs=None) -> Outcome:
    return ("pass" if ok else "fail", list(witnesses), obs or {})


SKIP: Outcome = ("skip", [], {})

# observation keys summed over the family instead of listed per lattice
DISTRIBUTIONS = {"codim_minus_E", "tree_lattices", "points"}


def check_theorem_a(L: Lattice) -> Outcome:
    r = smooth.verify_theorem_a(L)
    obs = {"codim_minus_E": r.notes["codim_minus_E"]}
    if r.notes["strict_excess"]:
        obs["strict_excess"] = r.notes["strict_excess"]
    return _result(r.passed, r.witnesses, obs)


def check_theorem_b(L: Lattice) -> Outcome:
    if not classify.is_square_lattice(L):
        return SKIP
    r = smooth.verify_theorem_b(L)
    return _result(r.passed, r.witnesses)


def check_theorem_c(L: Lattice) -> Outcome:
    if not classify.is_square_lattice(L):
        return SKIP
    r = smooth.verify_theorem_c(L)
    return _result(r.passed, r.witnesses)


def check_tree_honest(L: Lattice) -> Outcome:
    t, h = classify.is_tree_lattice(L), classify.is_honest(L)
    wit = [] if t == h else [{"tree": t, "honest": h}]
    obs = {"tree_lattices": {"tree" if t else "not tree": 1}}
    if t and not classify.unique_lower_cover_in_tree(L):
        wit.append("tree lattice with a join-irreducible of two lower covers")
    return _result(not wit, wit, obs)


def check_lemma_chain(L: Lattice) -> Outcome:
    wit = []
    for beta in classify.maximal_join_irreducibles(L):
        r = classify.verify_lemma_chain(L, beta)
        wit += [{"beta": str(beta), "witness": w} for w in r.witnesses]
    return _result(not wit, wit)


def check_bijection(L: Lattice) -> Outcome:
    if not classify.is_tree_lattice(L):
        return SKIP
    wit = []
    for beta in classify.maximal_join_irreducibles(L):
        r = classify.verify_bijection_lemma(L, beta)
        wit += [{"beta": str(beta), "witness": w} for w in r.witnesses]
    return _result(not wit, wit)


def _two_factor(L: Lattice) -> bool:
    return len(classify.decompose_chain_product(L).factor_sizes) == 2


def check_lemma_inequality(L: Lattice) -> Outcome:
    if not classify.is_square_lattice(L):
        return SKIP
    wit = []
    for beta in classify.maximal_join_irreducibles(L):
        r = classify.verify_lemma_inequality(L, beta)
        wit += [dict(v, beta=str(beta)) for v in r.violations]
    return _result(not wit, wit)


def check_lemma_greater(L: Lattice) -> Outcome:
    if not classify.is_square_lattice(L):
        return SKIP
    wit, dev = [], []
    for beta in classify.maximal_join_irreducibles(L):
        r = classify.verify_lemma_greater(L, beta)
        wit += [dict(v, beta=str(beta)) for v in r.violations]
        dev += [dict(v, beta=str(beta)) for v in r.equality_deviations]
    obs = {}
    if dev and _two_factor(L):
        obs["two_factor_equality_deviations"] = dev
    return _result(not wit, wit, obs)


def check_birkhoff_roundtrip(L: Lattice) -> Outcome:
    """Join-irreducibles read off the lattice order reproduce ``jposet``."""
    lower = L.lower_covers
    jis = [e for e in range(len(L)) if len(lower[e]) == 1]
    jp = L.jposet
    found = {}
    for e in jis:
        p = next((p for p in range(len(jp)) if jp.down[p] == L.ideals[e]), None)
        if p is None:
            return _result(False, [f"{L.label(e)} is not a principal ideal"])
        found[p] = e
    wit = []
    if sorted(found) != list(range(len(jp))):
        wit.append("join-irreducible count differs")
    else:
        for p in range(len(jp)):
            for q in range(len(jp)):
                if L.leq(found[p], found[q]) != bool(jp.down[q] >> p & 1):
                    wit.append((str(jp.elements[p]), str(jp.elements[q])))
    return _result(not wit, wit)


def check_oracle_agreement(L: Lattice) -> Outcome:
    verdicts = smooth.oracle_agreement(L)
    singular = sum(1 for v in verdicts.values() if not v)
    return _result(True, [], {"points": {"singular": singular, "smooth": len(verdicts) - singular}})


def check_rank_structure(L: Lattice) -> Outcome:
    rep = smooth.smoothness_report(L)
    wit = [p.label for p in rep.points if p.rank != p.E or p.rank > p.codim]
    return _result(not wit, wit)


def _lub_from_order(leq: np.ndarray, up: bool) -> np.ndarray:
    """Least upper (greatest lower) bounds from the order matrix alone."""
    rel = leq if up else leq.T                   # rel[x, z]: z bounds x
    bounds = rel[:, None, :] & rel[None, :, :]   # [x, y, z]
    if not bounds.any(axis=2).all():
        raise InvalidInput("some pair has no common bound")
    score = np.where(bounds, rel.sum(axis=1)[None, None, :], -1)
    best = score.argmax(axis=2)
    if not np.all(~bounds | rel[best]):
        raise InvalidInput("some pair has no least bound")
    return best


def check_structure(L: Lattice) -> Outcome:
    """Ideal count, lattice laws, maximal chains, diamonds and the
    join-irreducible splitting property, all by brute force."""
    wit = []
    jp = L.jposet
    d = len(jp)
    if d <= 16:
        brute = sum(1 for m in range(1 << d)
                    if all(not m >> i & 1 or jp.down[i] & ~m == 0 for i in range(d)))
        if brute != len(L):
            wit.append(f"ideal count {len(L)} != brute force {brute}")
    leq = L.leq_matrix
    J, M = L.join_table, L.meet_table
    if not np.array_equal(J, _lub_from_order(leq, up=True)):
        wit.append("union is not the least upper bound")
    if not np.array_equal(M, _lub_from_order(leq, up=False)):
        wit.append("intersection is not the greatest lower bound")
    n = len(L)
    x = np.arange(n)
    lhs = M[J[:, :, None], x[None, None, :]]
    rhs = J[M[:, None, :], M[None, :, :]]
    if not np.array_equal(lhs, rhs):
        wit.append("distributive identity fails")
    if not (np.array_equal(M[x[:, None], J], np.broadcast_to(x[:, None], (n, n)))
            and np.array_equal(J[x[:, None], M], np.broadcast_to(x[:, None], (n, n)))):
        wit.append("absorption fails")
    lengths = L.chain_length_range()
    if lengths != (L.ji_count_paper, L.ji_count_paper):
        wit.append(f"maximal chain cardinalities range over {lengths}")
    if len(diamonds.enumerate_diamonds(L)) != diamonds.incomparable_pair_count(L):
        wit.append("diamond count != incomparable pairs")
    # x v y >= beta  =>  x >= beta or y >= beta, for proper join-irreducibles beta
    betas = L.proper_join_irreducibles
    if betas:
        ge = leq[betas, :]                      # ge[b, x] : beta_b <= x
        above_join = ge[:, J]                    # [b, x, y]
        either = ge[:, :, None] | ge[:, None, :]
        if np.any(above_join & ~either):
            wit.append("join-irreducible splitting fails")
    return _result(not wit, wit)


def check_dual(L: Lattice) -> Outcome:
    Ld, perm = dual(L)
    a = diamonds.partner_count_all(L)
    b = diamonds.partner_count_all(Ld)
    wit = [L.label(i) for i in range(len(L)) if a[i] != b[perm[i]]]
    ra = smooth.smoothness_report(L)
    rb = smooth.smoothness_report(Ld)
    wit += [p.label for p in ra.points if p.verdict != rb.points[perm[p.alpha]].verdict]
    return _result(not wit, wit)


CHECKS: dict[str, Callable[[Lattice], Outcome]] = {
    "theorem-a": check_theorem_a,
    "theorem-b": check_theorem_b,
    "theorem-c": check_theorem_c,
    "tree-honest": check_tree_honest,
    "lemma-chain": check_lemma_chain,
    "lemma-inequality": check_lemma_inequality,
    "lemma-greater": check_lemma_greater,
    "bijection": check_bijection,
    "birkhoff-roundtrip": check_birkhoff_roundtrip,
    "oracle-agreement": check_oracle_agreement,
    "rank-structure": check_rank_structure,
    "structure": check_structure,
    "dual": check_dual,
}


@dataclass
class CampaignReport:
    family: dict
    checks: list[str]
    lattices: int = 0
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    observations: list = field(default_factory=list)
    distributions: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"family": self.family, "checks": self.checks, "lattices": self.lattices,
                "counts": self.counts, "violations": self.violations,
                "observations": self.observations,
                "distributions": {k: {str(x): n for x, n in sorted(v.items(), key=lambda t: str(t[0]))}
                                  for k, v in sorted(self.distributions.items())},
                "ok": self.ok}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [f"family {json.dumps(self.family, sort_keys=True)}: {self.lattices} lattices"]
        for name in self.checks:
            c = self.counts[name]
            lines.append(f"  {name:<18} pass {c['pass']:>6}  fail {c['fail']:>4}  skip {c['skip']:>6}")
        lines.append("PASS" if self.ok else f"FAIL ({len(self.violations)} violations)")
        return "\n".join(lines)


def run_lattices(lattices, checks, family: dict) -> CampaignReport:
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise InvalidInput(f"unknown checks {unknown}; choose from {list(CHECKS)}")
    rep = CampaignReport(family, list(checks))
    rep.counts = {c: {"pass": 0, "fail": 0, "skip": 0} for c in checks}
    for k, L in enumerate(lattices):
        rep.lattices += 1
        for name in checks:
            status, wit, obs = CHECKS[name](L)
            rep.counts[name][status] += 1
            if wit:
                rep.violations.append({"index": k, "lattice": L.name, "check": name,
                                       "witnesses": wit})
            extra = {}
            for key, val in obs.items():
                if key in DISTRIBUTIONS:
                    hist = rep.distributions.setdefault(key, {})
                    for x, cnt in val.items():
                        hist[x] = hist.get(x, 0) + cnt
                else:
                    extra[key] = val
            if extra:
                rep.observations.append({"index": k, "lattice": L.name, "check": name, **extra})
    return rep


def run_campaign(spec: FamilySpec, checks=ALL_CHECKS) -> CampaignReport:
    return run_lattices(generate_family(spec), list(checks), spec.to_dict())
