"""Integer lattice helpers: maximal-minor gcds and membership in (nZ)^e + sum m_j Z."""

from __future__ import annotations

import itertools
from functools import reduce
from math import gcd

__all__ = ["int_det", "maximal_minor_gcd", "lattice_columns", "lattice_gcd", "lattice_membership"]


def int_det(M) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def maximal_minor_gcd(columns, e: int) -> int:
    """gcd of all e x e minors of the e x k matrix whose columns are given."""
    cols = [tuple(int(x) for x in c) for c in columns]
    g = 0
    for pick in itertools.combinations(range(len(cols)), e):
        d = int_det([[cols[j][i] for j in pick] for i in range(e)])
        g = gcd(g, d)
        if g == 1:
            break
    return abs(g)


def lattice_columns(n: int, e: int, gens) -> list:
    return [tuple(n if i == j else 0 for i in range(e)) for j in range(e)] + [tuple(g) for g in gens]


def lattice_gcd(n: int, e: int, gens) -> int:
    """D for the lattice (nZ)^e + sum gens Z."""
    return maximal_minor_gcd(lattice_columns(n, e, gens), e)


def lattice_membership(n: int, prefix, v) -> tuple[bool, int]:
    """(v in (nZ)^e + sum prefix Z, least k >= 1 with k v in that lattice)."""
    v = tuple(int(x) for x in v)
    e = len(v)
    D = lattice_gcd(n, e, prefix)
    Dt = lattice_gcd(n, e, list(prefix) + [v])
    return D == Dt, D // Dt


def gcd_all(values) -> int:
    return reduce(gcd, (abs(int(x)) for x in values), 0)
