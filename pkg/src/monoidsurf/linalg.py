"""Small exact linear algebra helpers over Q (lists of lists of Fraction)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


def rref(matrix):
    """Reduced row echelon form. Returns (rows, pivot column indices)."""
    rows = [list(map(Fraction, r)) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def solve(matrix, rhs):
    """One solution of A x = b over Q, or None if inconsistent."""
    if not matrix:
        return [] if all(v == 0 for v in rhs) else None
    aug = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(matrix, rhs)]
    red, pivots = rref(aug)
    n = len(matrix[0])
    if n in pivots:  # pivot in the rhs column
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = red[i][-1]
    return x


def nullspace(matrix):
    """Basis of the right null space of A over Q."""
    if not matrix:
        return []
    red, pivots = rref(matrix)
    n = len(matrix[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def det(matrix) -> Fraction:
    """Determinant over Q by fraction-free Bareiss on a common-denominator lift."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in matrix:
        for x in row:
            x = Fraction(x)
            den = den * x.denominator // int_gcd(den, x.denominator)
    rows = [[int(Fraction(x) * den) for x in row] for row in matrix]
    d = int_det_bareiss(rows)
    return Fraction(d, den**n)


def int_det_bareiss(rows) -> int:
    """Determinant of a square integer matrix, fraction-free."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pr is None:
                return 0
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def int_rank(rows) -> int:
    """Rank of an integer matrix via fraction-free elimination with row reduction."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank_ = 0
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                x = a[i][c]
                a[i] = [pv * u - x * v for u, v in zip(a[i], a[r])]
                g = 0
                for u in a[i]:
                    g = int_gcd(g, u)
                if g > 1:
                    a[i] = [u // g for u in a[i]]
        rank_ += 1
        r += 1
        if r == len(a):
            break
    return rank_
