"""Exact Gaussian elimination over Fraction / Gauss scalars."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalars import normalize

__all__ = ["rref", "nullspace", "rank", "solve_combination", "matmul"]


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with first-nonzero (top-down) pivoting."""
    m = [[normalize(v) for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [normalize(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [normalize(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {v : A v = 0}; each vector has a single free entry equal to 1."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = normalize(-red[r][f])
        basis.append(v)
    return basis


def solve_combination(columns: Sequence[Sequence], target: Sequence) -> list | None:
    """Exact coefficients x with sum_j x_j columns[j] == target, or None."""
    n = len(columns)
    if n == 0:
        return [] if all(t == 0 for t in target) else None
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(len(target))]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = red[r][n]
    return x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[normalize(sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0))) for j in range(m)] for i in range(n)]
