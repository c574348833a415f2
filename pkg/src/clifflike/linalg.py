"""Exact rank and determinant by fraction-free elimination.

Rows are given as sparse dicts ``column -> rational`` with mutually
comparable column keys; each row is scaled to integers before elimination so
no rational arithmetic happens in the loop.
"""

from __future__ import annotations

from math import gcd, lcm, prod
from typing import Hashable, Iterable, Mapping, Sequence

from gmpy2 import mpq


def _integer_row(row: Mapping[Hashable, object]) -> dict:
    vals = {k: mpq(v) for k, v in row.items() if v}
    if not vals:
        return {}
    den = lcm(*(v.denominator for v in vals.values()))
    out = {k: int(v * den) for k, v in vals.items()}
    g = gcd(*out.values())
    return {k: v // g for k, v in out.items()}


class IncrementalRank:
    """Row echelon form grown one row at a time.

    ``add`` reports whether the new row was independent of the rows seen so
    far.  Elimination is integer-only: ``r <- p*r - r[c]*pivot_row`` followed
    by removal of the row content, which keeps entries small.
    """

    def __init__(self):
        self._pivots: dict[Hashable, dict] = {}  # pivot column -> integer row

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: Mapping) -> dict:
        r = _integer_row(row)
        while r:
            col = min(r)
            piv = self._pivots.get(col)
            if piv is None:
                return r
            p, c = piv[col], r[col]
            out = {k: p * v for k, v in r.items()}
            for k, v in piv.items():
                nv = out.get(k, 0) - c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            g = gcd(*out.values()) if out else 1
            r = {k: v // g for k, v in out.items()}
        return r

    def add(self, row: Mapping) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self._pivots[min(r)] = r
        return True


def rank(rows: Iterable[Mapping]) -> int:
    acc = IncrementalRank()
    for r in rows:
        acc.add(r)
    return acc.rank


def det(matrix: Sequence[Sequence]) -> mpq:
    """Determinant of a square rational matrix via the Bareiss recurrence."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return mpq(1)
    rows = [[mpq(x) for x in row] for row in matrix]
    scale = [lcm(*(x.denominator for x in row)) for row in rows]
    den = prod(scale)
    M = [[int(x * s) for x in row] for row, s in zip(rows, scale)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return mpq(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return mpq(sign * M[n - 1][n - 1], den)
