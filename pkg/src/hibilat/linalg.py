"""Exact linear algebra: fraction-free (Bareiss) rank and sparse rational elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np


def to_integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Clear denominators row by row; row scaling keeps rank and zero pattern."""
    out = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        den = lcm(*(f.denominator for f in fr)) if fr else 1
        out.append([int(f * den) for f in fr])
    return out


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix given as a list of rows."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            row = m[r]
            prow = m[rank]
            for c in range(col, ncols):
                # Bareiss step: the division by the previous pivot is exact
                row[c] = (p * row[c] - f * prow[c]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def rational_rank(rows: Sequence[Sequence]) -> int:
    return integer_rank(to_integer_rows(rows))


def sparse_rank(rows: Sequence[dict], ncols: int | None = None) -> int:
    """Rank of a matrix whose rows are ``{column: value}`` dicts, by exact
    sparse row reduction (rationals only where a division is inexact)."""
    pivots: dict[int, dict] = {}
    for r in rows:
        row = {c: v for c, v in r.items() if v != 0}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            f = _scaled(row[c], piv[c])
            for k, v in piv.items():
                x = row.get(k, 0) - f * v
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
    return len(pivots)


def _scaled(a, p):
    """``a / p`` kept as an int when exact."""
    if p == 1 or p == -1:
        return a * p
    if isinstance(a, int) and isinstance(p, int) and a % p == 0:
        return a // p
    return Fraction(a) / p


def integer_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix.

    Exact sparse elimination over the rationals: rows are ``{column: value}``
    dicts and each column is pivoted on the sparsest available row, which
    keeps the 0/+-1 matrices met here sparse throughout.
    """
    if isinstance(matrix, np.ndarray):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("determinant needs a square matrix")
        n = matrix.shape[0]
        rows = []
        for r in matrix:
            nz = np.flatnonzero(r)
            rows.append(dict(zip(nz.tolist(), r[nz].tolist())))
    else:
        n = len(matrix)
        if any(len(r) != n for r in matrix):
            raise ValueError("determinant needs a square matrix")
        rows = [{j: v for j, v in enumerate(r) if v != 0} for r in matrix]
    det = 1
    for k in range(n):
        cand = [i for i in range(k, n) if k in rows[i]]
        if not cand:
            return 0
        piv = min(cand, key=lambda i: (len(rows[i]), i))
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            det = -det
        prow = rows[k]
        p = prow[k]
        det *= p
        for row in rows[k + 1:]:
            if k not in row:
                continue
            f = _scaled(row[k], p)
            for j, v in prow.items():
                x = row.get(j, 0) - f * v
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
    if isinstance(det, Fraction):
        det = int(det)
    return det


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
