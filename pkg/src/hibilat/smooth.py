"""Jacobian analysis of the Hibi ideal at coordinate points.

The coordinate point ``p_a`` has a single nonzero coordinate ``c`` at
``a``.  A point of the affine cone is smooth iff the Jacobian of the
generators has rank equal to the codimension there (the ideal is prime), so
every verdict here comes from an exact rank computation.  The partner count
is computed separately by the diamond sweep and the two are compared.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .diamonds import BinomialRelation, ideal_generators, partner_sets_all
from .errors import (
    NotSquare,
    OracleDisagreement,
    RankExceedsCodim,
    RankMismatch,
)
from .lattice import Lattice
from .linalg import sparse_rank

SMOOTH = "smooth"
SINGULAR = "singular"


@dataclass(frozen=True)
class CoordinatePoint:
    alpha: int
    value: Fraction = Fraction(1)

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("coordinate point needs a nonzero value")

    def coordinates(self, n: int) -> list[Fraction]:
        out = [Fraction(0)] * n
        out[self.alpha] = Fraction(self.value)
        return out


@dataclass
class JacobianAtPoint:
    """Sparse Jacobian: ``rows[k]`` is ``{column: value}`` for generator ``k``
    (exact values: ints, or Fractions for non-integral points);
    generators whose row vanishes are left out of ``rows``."""

    nrows: int
    ncols: int
    rows: dict[int, dict[int, Fraction]]

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for k, r in self.rows.items():
            for c, v in r.items():
                out[k][c] = v
        return out


@dataclass(frozen=True)
class PointVerdict:
    alpha: int | None
    rank: int
    codim: int

    @property
    def smooth(self) -> bool:
        return self.rank == self.codim

    @property
    def verdict(self) -> str:
        return SMOOTH if self.smooth else SINGULAR

    def describe(self) -> str:
        if self.codim == 0:
            return f"{self.verdict} (codim 0)"
        rel = "=" if self.smooth else "<"
        return f"{self.verdict} (rank {self.rank} {rel} codim {self.codim})"


@dataclass
class CheckResult:
    """Outcome of a theorem or lemma check; falsy when there are witnesses."""

    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


class _Generators:
    """Generators of a lattice indexed by the variables they involve."""

    def __init__(self, L: Lattice):
        self.relations: list[BinomialRelation] = ideal_generators(L)
        by_var = [[] for _ in range(len(L))]
        for k, rel in enumerate(self.relations):
            for a in rel.plus_pair + rel.minus_pair:
                by_var[a].append(k)
        self.by_var = by_var


@lru_cache(maxsize=2)
def _generators(L: Lattice) -> _Generators:
    return _Generators(L)


def _exact(v):
    """Integers stay ints (fast path); anything else becomes a Fraction."""
    f = Fraction(v)
    return int(f) if f.denominator == 1 else f


def evaluate_jacobian(L: Lattice, point: dict[int, Fraction]) -> JacobianAtPoint:
    """Jacobian of all generators at the point with the given nonzero coordinates.

    Each entry is the derivative of ``x_u * x_v`` with respect to ``x_u``,
    i.e. the value of ``x_v``.  Rows of generators that involve no variable
    with a nonzero coordinate vanish identically and are skipped.
    """
    gens = _generators(L)
    point = {k: _exact(v) for k, v in point.items()}
    support = sorted(k for k, v in point.items() if v != 0)
    touched = sorted({k for a in support for k in gens.by_var[a]})
    rows = {}
    for k in touched:
        entries: dict = {}
        for (u, v), sign in gens.relations[k].monomials():
            for var, other in ((u, v), (v, u)):
                val = point.get(other, 0)
                if val:
                    entries[var] = entries.get(var, 0) + sign * val
        entries = {c: x for c, x in entries.items() if x != 0}
        if entries:
            rows[k] = entries
    return JacobianAtPoint(len(gens.relations), len(L), rows)


def _point(L: Lattice, point) -> CoordinatePoint:
    if isinstance(point, CoordinatePoint):
        L.element(point.alpha)
        return point
    return CoordinatePoint(L.element(point))


def jacobian_at(L: Lattice, point) -> JacobianAtPoint:
    p = _point(L, point)
    return evaluate_jacobian(L, {p.alpha: Fraction(p.value)})


def structural_rank(J: JacobianAtPoint) -> int:
    """Number of distinct columns hit, valid when every nonzero row has a
    single nonzero entry (which holds at coordinate points)."""
    cols = set()
    for r in J.rows.values():
        if len(r) != 1:
            raise RankMismatch("row with more than one entry at a coordinate point")
        cols.update(r)
    return len(cols)


def rank_at(L: Lattice, point) -> int:
    """Exact Jacobian rank at ``point`` by fraction-free elimination,
    cross-checked against the structural count."""
    J = jacobian_at(L, point)
    r = sparse_rank(list(J.rows.values()), J.ncols)
    s = structural_rank(J)
    if r != s:
        raise RankMismatch(f"elimination rank {r} != structural rank {s}")
    return r


def is_smooth_at(L: Lattice, point) -> PointVerdict:
    p = _point(L, point)
    r = rank_at(L, p)
    c = L.codim
    if r > c:
        raise RankExceedsCodim(
            f"rank {r} > codim {c} at {L.label(p.alpha)!r} in {L.name!r}")
    return PointVerdict(p.alpha, r, c)


def origin_verdict(L: Lattice) -> PointVerdict:
    """The apex of the cone: every generator is a quadric, so the Jacobian vanishes."""
    J = evaluate_jacobian(L, {})
    return PointVerdict(None, sparse_rank(list(J.rows.values()), J.ncols), L.codim)


@dataclass
class PointReport:
    alpha: int
    label: str
    partners: list[str]
    E: int
    rank: int
    codim: int
    verdict: str

    def to_dict(self) -> dict:
        return {"id": self.label, "partners": self.partners, "E": self.E,
                "rank": self.rank, "codim": self.codim, "verdict": self.verdict}


@dataclass
class SmoothnessReport:
    lattice: str
    size: int
    ji_count: int
    codim: int
    points: list[PointReport]
    origin: str

    @property
    def all_smooth(self) -> bool:
        return all(p.verdict == SMOOTH for p in self.points)

    @property
    def theorem_b_holds(self) -> bool:
        return all(p.E >= p.codim for p in self.points)

    @property
    def singular(self) -> list[str]:
        return [p.label for p in self.points if p.verdict == SINGULAR]

    def gap_distribution(self) -> dict[int, int]:
        """Histogram of ``codim - |E_a|`` over the coordinate points."""
        return dict(sorted(Counter(p.codim - p.E for p in self.points).items()))

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice,
            "size": self.size,
            "paper_ji_count": self.ji_count,
            "codim": self.codim,
            "points": [p.to_dict() for p in self.points],
            "origin": self.origin,
            "all_smooth": self.all_smooth,
            "theorem_b_holds": self.theorem_b_holds,
            "singular": self.singular,
            "codim_minus_E": {str(k): v for k, v in self.gap_distribution().items()},
        }


def smoothness_report(L: Lattice) -> SmoothnessReport:
    partners = partner_sets_all(L)
    points = []
    for a in range(len(L)):
        v = is_smooth_at(L, a)
        if v.rank != len(partners[a]):
            raise RankMismatch(
                f"rank {v.rank} != |E| {len(partners[a])} at {L.label(a)!r} in {L.name!r}")
        points.append(PointReport(a, L.label(a), [L.label(g) for g in sorted(partners[a])],
                                  len(partners[a]), v.rank, v.codim, v.verdict))
    return SmoothnessReport(L.name, len(L), L.ji_count_paper, L.codim, points,
                            origin_verdict(L).verdict)


def verify_theorem_a(L: Lattice) -> CheckResult:
    """Every point with ``|E_a| >= codim`` must be smooth.

    ``|E_a| > codim`` would contradict rank <= codim and is recorded as an
    anomaly in ``notes`` (it also raises inside :func:`is_smooth_at`).
    """
    rep = smoothness_report(L)
    witnesses = [p.label for p in rep.points if p.E >= p.codim and p.verdict != SMOOTH]
    anomalies = [p.label for p in rep.points if p.E > p.codim]
    return CheckResult("theorem-a", not witnesses, witnesses,
                       {"strict_excess": anomalies, "codim_minus_E": rep.gap_distribution()})


def _require_square(L: Lattice):
    from .classify import is_square_lattice

    if not is_square_lattice(L):
        raise NotSquare(f"{L.name!r} is not a square lattice")


def verify_theorem_b(L: Lattice) -> CheckResult:
    _require_square(L)
    from .diamonds import partner_count_all

    counts = partner_count_all(L)
    c = L.codim
    witnesses = [{"alpha": L.label(a), "E": e, "codim": c} for a, e in enumerate(counts) if e < c]
    return CheckResult("theorem-b", not witnesses, witnesses)


def verify_theorem_c(L: Lattice) -> CheckResult:
    """All coordinate points smooth and every vertex cone of the order
    polytope unimodular, with pointwise agreement of the two oracles."""
    _require_square(L)
    agreement = oracle_agreement(L)
    witnesses = [lab for lab, ok in agreement.items() if not ok]
    return CheckResult("theorem-c", not witnesses, witnesses)


def oracle_agreement(L: Lattice) -> dict[str, bool]:
    """Per element: verdict (True = smooth) after checking the Jacobian and
    the polytope oracle agree; raises :class:`OracleDisagreement` otherwise."""
    from .polytope import order_polytope, toric_smooth_all_vertices

    rep = smoothness_report(L)
    _, cones = toric_smooth_all_vertices(order_polytope(L))
    out = {}
    for p, cone in zip(rep.points, cones):
        jac = p.verdict == SMOOTH
        if jac != cone.unimodular:
            raise OracleDisagreement(
                f"{L.name!r} at {p.label!r}: Jacobian says {p.verdict}, "
                f"vertex cone unimodular={cone.unimodular}")
        out[p.label] = jac
    return out
