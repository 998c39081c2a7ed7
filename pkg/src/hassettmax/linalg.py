"""Exact linear algebra over the rationals.

Matrices are lists of lists; entries are ints or Fractions and stay exact
throughout. Sizes in this package are tiny (at most 56 columns), so plain
Gaussian elimination with Fraction pivots is the right tool. Determinants
use fraction-free Bareiss elimination to stay in integers when the input
is integral.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def _to_fractions(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form. Returns (matrix, pivot column indices)."""
    m = _to_fractions(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def kernel_basis(rows) -> list[list[Fraction]]:
    """Basis of the right kernel. One vector per free column, free variable
    set to 1, listed in ascending free-column order."""
    m, pivots = rref(rows)
    ncols = len(m[0]) if m else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def mat_mul(a, b) -> Matrix:
    n, k = len(a), len(b)
    p = len(b[0])
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for j in range(k):
            x = ai[j]
            if x == 0:
                continue
            bj = b[j]
            row = out[i]
            for t in range(p):
                row[t] += x * bj[t]
    return out


def mat_vec(a, v) -> list[Fraction]:
    return [sum(Fraction(x) * Fraction(y) for x, y in zip(row, v)) for row in a]


def transpose(a) -> list[list]:
    return [list(col) for col in zip(*a)]


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det_bareiss(rows) -> int:
    """Determinant of an integer matrix, fraction-free (Bareiss)."""
    m = [list(map(int, row)) for row in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("square matrix required")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_principal_minors(rows) -> list[int]:
    n = len(rows)
    return [det_bareiss([row[: k + 1] for row in rows[: k + 1]]) for k in range(n)]
