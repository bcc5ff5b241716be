"""Integer linear algebra: Smith normal form and congruence systems mod N."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def matvec(a, x):
    return [sum(r[j] * x[j] for j in range(len(x))) for r in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def det(a) -> int:
    n = len(a)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return int(d)


def unimodular_inverse(a) -> list[list[int]]:
    """Integer inverse of a matrix with determinant +-1 (via the adjugate)."""
    n = len(a)
    d = det(a)
    if abs(d) != 1:
        raise ValueError(f"matrix has determinant {d}, not +-1")
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]
            inv[j][i] = (-1) ** (i + j) * det(minor) * d
    return inv


def exterior_power(b, degree: int):
    """Matrix of the induced map on the degree-th exterior power.

    Rows and columns are indexed by increasing index tuples (0-based) in
    lexicographic order; entry ``[T][S]`` is the minor ``det(b[T, S])``.
    """
    n = len(b)
    subsets = list(combinations(range(n), degree))
    out = {}
    for t in subsets:
        for s in subsets:
            m = det([[b[i][j] for j in s] for i in t]) if degree else 1
            if m:
                out[t, s] = m
    return subsets, out


def smith_normal_form(a):
    """Return ``(U, D, V)`` with ``U @ a @ V == D`` diagonal, U and V unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nz:
                return u, d, v
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                q = d[i][t] // p
                if q:
                    add_row(i, t, -q)
                if d[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = d[t][j] // p
                if q:
                    add_col(j, t, -q)
                if d[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def congruence_solvable(a, rhs, modulus: int) -> bool:
    """Does ``a @ x == rhs (mod modulus)`` have an integer solution?"""
    if not a:
        return True
    u, d, _ = smith_normal_form(a)
    c = matvec(u, rhs)
    n = len(a[0])
    for i, ci in enumerate(c):
        di = d[i][i] if i < n else 0
        if ci % gcd(di, modulus):
            return False
    return True


def lex_min_solution(a, rhs, modulus: int):
    """Lexicographically smallest ``x`` in ``[0, modulus)^n`` with ``a x == rhs``.

    Returns None when the system has no solution. Coordinates are fixed one
    at a time, each to the smallest value that keeps the system solvable.
    """
    n = len(a[0]) if a else 0
    rows = [list(r) for r in a]
    rhs = list(rhs)
    if not congruence_solvable(rows, rhs, modulus):
        return None
    x = []
    for j in range(n):
        e = [int(k == j) for k in range(n)]
        for t in range(modulus):
            if congruence_solvable(rows + [e], rhs + [t], modulus):
                rows.append(e)
                rhs.append(t)
                x.append(t)
                break
    return x
