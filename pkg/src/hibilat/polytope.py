"""Order polytope of the join-irreducible poset and its vertex cones.

Vertices are the indicator vectors of the order ideals, one per lattice
element.  The projective toric variety of the lattice is smooth at the
torus-fixed point of a vertex iff that vertex cone is unimodular: exactly
``dim`` edges whose primitive directions form a basis of the integer lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .errors import CriterionMismatch, InternalConsistencyError
from .lattice import Lattice
from .linalg import integer_det
from .poset import Poset, bits


@dataclass
class OrderPolytope:
    """``A x <= b`` with rows ``-x_p <= 0``, ``x_p <= 1`` and, for each cover
    ``lo < hi`` of the poset, ``x_hi - x_lo <= 0``."""

    poset: Poset
    labels: tuple[str, ...]
    vertices: np.ndarray
    A: np.ndarray
    b: np.ndarray

    @property
    def ambient_dim(self) -> int:
        return self.A.shape[1]

    def feasible(self, x) -> bool:
        return bool(np.all(self.A @ np.asarray(x) <= self.b))

    def tight(self) -> np.ndarray:
        """``tight[v, k]`` iff constraint ``k`` holds with equality at vertex ``v``."""
        return (self.vertices @ self.A.T) == self.b[None, :]


@dataclass
class VertexConeReport:
    vertex: int
    label: str
    edge_directions: list[tuple[int, ...]]
    simple: bool
    determinant: int | None
    unimodular: bool
    reason: str

    def to_dict(self) -> dict:
        return {"vertex": self.label, "edges": len(self.edge_directions),
                "simple": self.simple, "det": self.determinant,
                "unimodular": self.unimodular, "reason": self.reason}


def order_polytope(L: Lattice) -> OrderPolytope:
    jp = L.jposet
    d = len(jp)
    verts = np.zeros((len(L), d), dtype=np.int64)
    for i, m in enumerate(L.ideals):
        for p in bits(m):
            verts[i, p] = 1
    rows, rhs = [], []
    for p in range(d):
        r = [0] * d
        r[p] = -1
        rows.append(r)
        rhs.append(0)
        r = [0] * d
        r[p] = 1
        rows.append(r)
        rhs.append(1)
    for lo, hi in jp.covers:
        r = [0] * d
        r[hi], r[lo] = 1, -1
        rows.append(r)
        rhs.append(0)
    A = np.array(rows, dtype=np.int64).reshape(len(rows), d)
    b = np.array(rhs, dtype=np.int64)
    P = OrderPolytope(jp, L.labels, verts, A, b)
    if d and not np.all(verts @ A.T <= b[None, :]):
        raise InternalConsistencyError("an ideal indicator violates the order constraints")
    return P


def face_test_edges(P: OrderPolytope) -> list[tuple[int, int]]:
    """Pairs ``(u, v)`` whose smallest common face contains no third vertex."""
    # float64 so the products go through BLAS; the counts stay far below 2**53
    T = P.tight().astype(np.float64)
    n = len(T)
    out = []
    for u in range(n):
        common = T[u][None, :] * T[u + 1:]
        need = common.sum(axis=1)
        hits = common @ T.T
        inside = (hits == need[:, None]).sum(axis=1)
        out += [(u, u + 1 + int(k)) for k in np.flatnonzero(inside == 2)]
    return out


def _connected_in_hasse(neighbors: list[int], mask: int) -> bool:
    if mask == 0:
        return False
    seen = stack = mask & -mask
    while stack:
        low = stack & -stack
        stack ^= low
        new = neighbors[low.bit_length() - 1] & mask & ~seen
        seen |= new
        stack |= new
    return seen == mask


def connectivity_edges(P: OrderPolytope, ideals: list[int]) -> list[tuple[int, int]]:
    """Pairs of nested ideals whose difference is connected in the Hasse graph."""
    nb = [P.poset.hasse_neighbors(i) for i in range(len(P.poset))]
    out = []
    n = len(ideals)
    for u in range(n):
        a = ideals[u]
        for v in range(u + 1, n):
            b = ideals[v]
            if a & ~b == 0:
                diff = b & ~a
            elif b & ~a == 0:
                diff = a & ~b
            else:
                continue
            if _connected_in_hasse(nb, diff):
                out.append((u, v))
    return out


def polytope_edges(P: OrderPolytope) -> list[tuple[int, int]]:
    faces = face_test_edges(P)
    ideals = [sum(1 << int(p) for p in np.flatnonzero(v)) for v in P.vertices]
    combinatorial = connectivity_edges(P, ideals)
    if faces != combinatorial:
        diff = sorted(set(faces) ^ set(combinatorial))
        raise CriterionMismatch(f"edge criteria disagree on {diff[:5]}")
    return faces


def _adjacency(n: int, edges) -> list[list[int]]:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return [sorted(x) for x in adj]


def _cone_report(P: OrderPolytope, vertex: int, nbrs: list[int]) -> VertexConeReport:
    D = P.vertices[nbrs] - P.vertices[vertex]
    if D.size and (np.abs(D).max() > 1 or np.any(np.gcd.reduce(np.abs(D), axis=1) != 1)):
        raise InternalConsistencyError(
            f"an edge direction at vertex {vertex} is not a primitive 0/+-1 vector")
    dirs = [tuple(r) for r in D.tolist()]
    label = P.labels[vertex]
    if len(dirs) != P.ambient_dim:
        return VertexConeReport(vertex, label, dirs, False, None, False, "not simple")
    det = integer_det(D)
    ok = abs(det) == 1
    return VertexConeReport(vertex, label, dirs, True, det, ok,
                            "unimodular" if ok else f"|det| = {abs(det)}")


def vertex_cone_report(P: OrderPolytope, vertex: int,
                       edges: list[tuple[int, int]] | None = None) -> VertexConeReport:
    if edges is None:
        edges = polytope_edges(P)
    nbrs = sorted({b if a == vertex else a for a, b in edges if vertex in (a, b)})
    return _cone_report(P, vertex, nbrs)


def toric_smooth_all_vertices(P: OrderPolytope) -> tuple[bool, list[VertexConeReport]]:
    adj = _adjacency(len(P.vertices), polytope_edges(P))
    reports = [_cone_report(P, i, adj[i]) for i in range(len(P.vertices))]
    return all(r.unimodular for r in reports), reports


def zero_one_points_are_ideals(P: OrderPolytope, max_dim: int = 16) -> bool:
    """Every feasible 0/1 point is an ideal indicator and vice versa."""
    d = P.ambient_dim
    if d > max_dim:
        raise ValueError(f"refusing to enumerate 2^{d} points")
    verts = {tuple(int(x) for x in v) for v in P.vertices}
    feasible = set()
    for x in iproduct((0, 1), repeat=d):
        if P.feasible(x):
            feasible.add(x)
    ideals = {x for x in iproduct((0, 1), repeat=d)
              if P.poset.is_ideal(sum(1 << i for i, t in enumerate(x) if t))}
    return feasible == verts == ideals


def vertex_matrix_text(P: OrderPolytope) -> str:
    header = "# " + " ".join(map(str, P.poset.elements))
    lines = [header] + [" ".join(str(int(x)) for x in v) for v in P.vertices]
    return "\n".join(lines) + "\n"


def edge_list_text(P: OrderPolytope, edges: list[tuple[int, int]] | None = None) -> str:
    if edges is None:
        edges = polytope_edges(P)
    return "".join(f"{a} {b}\n" for a, b in edges)
