"""Small exact linear algebra over Z and Q (matrices are lists of rows)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def mat_vec(m: Sequence[Sequence[int]], x: Sequence[int]) -> tuple:
    return tuple(dot(row, x) for row in m)


def mat_mul(a, b) -> tuple[tuple[int, ...], ...]:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m):
    return tuple(zip(*m))


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def det(m) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result


def solve_in_span(vectors: Sequence[Sequence[int]], target: Sequence[int]):
    """Coefficients c with sum c_i * vectors[i] == target, or None.

    The vectors must be linearly independent; coefficients are Fractions.
    """
    k = len(vectors)
    n = len(target)
    if k == 0:
        return () if all(t == 0 for t in target) else None
    # augmented system: rows are coordinates
    rows = [[Fraction(vectors[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            raise ValueError("vectors are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(r)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(rows[i][k] for i in pivots)


def integer_coefficients(vectors, target):
    """Integer coefficients of target in the span of independent vectors, or None."""
    sol = solve_in_span(vectors, target)
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)


def integer_solutions(a: Sequence[Sequence[int]], b: Sequence[int]):
    """All integer solutions of a @ x == b as (particular, kernel_basis), or None.

    Column-style Hermite reduction with a tracked unimodular transform.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(row) for row in a]
    u = [list(row) for row in identity(n)]

    def col_op(dst, src, factor):
        # column dst += factor * column src
        for row in h:
            row[dst] += factor * row[src]
        for row in u:
            row[dst] += factor * row[src]

    def col_swap(i, j):
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def col_neg(i):
        for row in h:
            row[i] = -row[i]
        for row in u:
            row[i] = -row[i]

    piv = 0
    pivot_rows = []
    for r in range(m):
        if piv >= n:
            break
        while True:
            nz = [c for c in range(piv, n) if h[r][c] != 0]
            if not nz:
                break
            c_min = min(nz, key=lambda c: abs(h[r][c]))
            col_swap(piv, c_min)
            done = True
            for c in range(piv + 1, n):
                if h[r][c]:
                    col_op(c, piv, -(h[r][c] // h[r][piv]))
                    if h[r][c]:
                        done = False
            if done:
                break
        if h[r][piv] != 0:
            if h[r][piv] < 0:
                col_neg(piv)
            pivot_rows.append(r)
            piv += 1
    rank = piv
    y = [0] * n
    for j, r in enumerate(pivot_rows):
        rest = b[r] - sum(h[r][k] * y[k] for k in range(j))
        if rest % h[r][j]:
            return None
        y[j] = rest // h[r][j]
    for r in range(m):
        if sum(h[r][k] * y[k] for k in range(n)) != b[r]:
            return None
    x0 = tuple(sum(u[i][k] * y[k] for k in range(n)) for i in range(n))
    kernel = [tuple(u[i][k] for i in range(n)) for k in range(rank, n)]
    return x0, kernel
