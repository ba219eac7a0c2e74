"""Exact linear algebra over the rationals and the integers.

Vectors are plain tuples; matrices are given as sequences of columns unless
noted otherwise.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

Vector = tuple  # tuple of Fraction (or int)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    rows = [[Fraction(x) for x in v] for v in vectors]
    return len(_rref(rows)[1])


def solve(columns: Sequence[Sequence], target: Sequence) -> tuple[Fraction, ...] | None:
    """A solution ``x`` of ``sum x_j columns[j] = target``, or ``None``.

    Free variables are set to zero, so the answer is the unique solution
    whenever the columns are linearly independent.
    """
    dim = len(target)
    k = len(columns)
    if k == 0:
        return () if all(t == 0 for t in target) else None
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(dim)]
    rows, pivots = _rref(rows)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        x[c] = rows[r][k]
    return tuple(x)


def nullspace(columns: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of the relations ``sum x_j columns[j] = 0``."""
    k = len(columns)
    if k == 0:
        return []
    dim = len(columns[0])
    rows = [[Fraction(columns[j][i]) for j in range(k)] for i in range(dim)]
    rows, pivots = _rref(rows)
    basis = []
    for free in (c for c in range(k) if c not in pivots):
        x = [Fraction(0)] * k
        x[free] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -rows[r][free]
        basis.append(tuple(x))
    return basis


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square matrix given as rows."""
    size = len(matrix)
    rows = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)]
            for i, row in enumerate(matrix)]
    rows, pivots = _rref(rows)
    if pivots[:size] != list(range(size)):
        raise ZeroDivisionError("singular matrix")
    return [row[size:] for row in rows]


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    rows = [[Fraction(x) for x in row] for row in matrix]
    size = len(rows)
    det = Fraction(1)
    for c in range(size):
        p = next((i for i in range(c, size) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, size):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def hermite_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form: a Z-basis of the lattice spanned by ``rows``."""
    work = [list(map(int, r)) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in work if r[c] != 0]
        if not live:
            continue
        rest = [r for r in work if r[c] == 0]
        # Euclid on column c until a single row carries it.
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            head = live[0]
            nxt = [head]
            for r in live[1:]:
                q = r[c] // head[c]
                r = [a - q * b for a, b in zip(r, head)]
                (nxt if r[c] != 0 else rest).append(r)
            live = nxt
        head = live[0]
        if head[c] < 0:
            head = [-a for a in head]
        basis.append(head)
        work = [r for r in rest if any(r)]
    for i in range(len(basis)):
        c = next(j for j, a in enumerate(basis[i]) if a)
        for k in range(i):
            q = basis[k][c] // basis[i][c]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return basis


def maximal_minor_gcd(rows: Sequence[Sequence[int]]) -> int:
    """gcd of the maximal minors of a full-row-rank integer matrix.

    Equals the index of the row lattice in its saturation.
    """
    r = len(rows)
    if r == 0:
        return 1
    g = 0
    for cols in combinations(range(len(rows[0])), r):
        d = determinant([[row[c] for c in cols] for row in rows])
        g = gcd(g, int(d))
        if g == 1:
            break
    return g
