"""Integral quadratic forms with exact evaluation and enumeration.

A form is stored by the symmetric integer matrix B of its polarization,
so Q(v) = v^T B v. All three builtin forms used by the rest of the
package live here:

    F   rank 4, the discriminant form of the rank-5 plane lattice
    Q3  x^2 + y^2 + 3 z^2
    G   x^2 + 3 y^2 + 3 z^2

Enumeration works from an exact rational LDL decomposition; bounds are
computed with integer square roots, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .linalg import leading_principal_minors

_GRAM_F = (
    (8, -4, -4, -1),
    (-4, 8, 2, -1),
    (-4, 2, 8, -1),
    (-1, -1, -1, 8),
)
_GRAM_Q3 = ((1, 0, 0), (0, 1, 0), (0, 0, 3))
_GRAM_G = ((1, 0, 0), (0, 3, 0), (0, 0, 3))


@dataclass(frozen=True)
class QuadraticForm:
    """Integral quadratic form Q(v) = v^T B v with symmetric integer B."""

    dim: int
    gram: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        if self.dim < 1 or len(self.gram) != self.dim:
            raise ValueError("gram size must match dim")
        for i, row in enumerate(self.gram):
            if len(row) != self.dim:
                raise ValueError("gram must be square")
            for j in range(self.dim):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram must be symmetric")


def builtin_form(name: str) -> QuadraticForm:
    if name == "F":
        return QuadraticForm(4, _GRAM_F, "F")
    if name == "Q3":
        return QuadraticForm(3, _GRAM_Q3, "Q3")
    if name == "G":
        return QuadraticForm(3, _GRAM_G, "G")
    raise ValueError(f"unknown builtin form: {name!r}")


def _check_dim(form: QuadraticForm, v) -> None:
    if len(v) != form.dim:
        raise ValueError(f"vector length {len(v)} != form dimension {form.dim}")


def evaluate(form: QuadraticForm, v):
    """Q(v), exact. Integer for integer v, Fraction otherwise."""
    _check_dim(form, v)
    b = form.gram
    total = 0
    for i in range(form.dim):
        vi = v[i]
        if vi == 0:
            continue
        row = b[i]
        total += vi * sum(row[j] * v[j] for j in range(form.dim))
    return total


def bilinear(form: QuadraticForm, v, w):
    """B(v, w) with B(v, v) = Q(v)."""
    _check_dim(form, v)
    _check_dim(form, w)
    b = form.gram
    return sum(
        v[i] * b[i][j] * w[j]
        for i in range(form.dim)
        for j in range(form.dim)
        if v[i] != 0 and w[j] != 0
    )


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v) -> bool:
    # zero vector counts as non-primitive
    return content(v) == 1


def is_positive_definite(form: QuadraticForm) -> bool:
    return all(m > 0 for m in leading_principal_minors(form.gram))


def _ldl(form: QuadraticForm):
    """Exact LDL data: Q(v) = sum_i d[i] * (v[i] + sum_{j>i} c[i][j] v[j])^2.

    Requires positive definiteness; raises otherwise.
    """
    n = form.dim
    a = [[Fraction(x) for x in row] for row in form.gram]
    d = []
    c = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        di = a[i][i]
        if di <= 0:
            raise ValueError("form is not positive definite")
        d.append(di)
        for j in range(i + 1, n):
            c[i][j] = a[i][j] / di
        for r in range(i + 1, n):
            for s in range(r, n):
                val = a[r][s] - a[i][r] * a[i][s] / di
                a[r][s] = val
                a[s][r] = val
    return d, c


def _floor_c_plus_sqrt(c: Fraction, m: Fraction) -> int:
    """Largest integer q with q <= c + sqrt(m), for m >= 0. Exact."""
    s = Fraction(isqrt(m.numerator * m.denominator), m.denominator)
    q = (c + s).__floor__()
    while True:
        step = q + 1 - c
        if step <= 0 or step * step <= m:
            q += 1
        else:
            return q


def _sqrt_fraction(m: Fraction):
    """sqrt(m) as a Fraction if m is a perfect rational square, else None."""
    if m < 0:
        return None
    sn = isqrt(m.numerator)
    sd = isqrt(m.denominator)
    if sn * sn != m.numerator or sd * sd != m.denominator:
        return None
    return Fraction(sn, sd)


def representations(form: QuadraticForm, n: int) -> list[tuple[int, ...]]:
    """All integer vectors v with Q(v) = n, in lexicographic order."""
    if not is_positive_definite(form):
        raise ValueError("representations requires a positive definite form")
    if n < 0:
        raise ValueError("n must be >= 0")
    dim = form.dim
    if n == 0:
        return [(0,) * dim]
    d, c = _ldl(form)
    out: list[tuple[int, ...]] = []
    v = [0] * dim

    def rec(i: int, rem: Fraction) -> None:
        shift = sum(c[i][j] * v[j] for j in range(i + 1, dim))
        if i == 0:
            s = _sqrt_fraction(rem / d[0])
            if s is None:
                return
            for cand in {-shift + s, -shift - s}:
                if cand.denominator == 1:
                    v[0] = int(cand)
                    out.append(tuple(v))
            return
        bound = rem / d[i]
        hi = _floor_c_plus_sqrt(-shift, bound)
        lo = -_floor_c_plus_sqrt(shift, bound)
        for val in range(lo, hi + 1):
            v[i] = val
            term = d[i] * (val + shift) ** 2
            rec(i - 1, rem - term)
        v[i] = 0

    rec(dim - 1, Fraction(n))
    return sorted(out)


def vectors_up_to(form: QuadraticForm, bound: int):
    """Yield (v, Q(v)) over all integer v with Q(v) <= bound.

    Includes the zero vector. Order is not specified.
    """
    if not is_positive_definite(form):
        raise ValueError("enumeration requires a positive definite form")
    if bound < 0:
        return
    dim = form.dim
    d, c = _ldl(form)
    v = [0] * dim

    def rec(i: int, rem: Fraction):
        shift = sum(c[i][j] * v[j] for j in range(i + 1, dim))
        limit = rem / d[i]
        hi = _floor_c_plus_sqrt(-shift, limit)
        lo = -_floor_c_plus_sqrt(shift, limit)
        for val in range(lo, hi + 1):
            v[i] = val
            term = d[i] * (val + shift) ** 2
            if i == 0:
                yield tuple(v), rem - term
            else:
                yield from rec(i - 1, rem - term)
        v[i] = 0

    for vec, slack in rec(dim - 1, Fraction(bound)):
        q = bound - slack
        yield vec, int(q)


def primitive_image(form: QuadraticForm, n_max: int) -> list[int]:
    """Sorted values Q(v) for primitive v with 0 < Q(v) <= n_max."""
    if not is_positive_definite(form):
        raise ValueError("primitive_image requires a positive definite form")
    seen: set[int] = set()
    for vec, q in vectors_up_to(form, n_max):
        if 0 < q and q not in seen and is_primitive(vec):
            seen.add(q)
    return sorted(seen)


def integer_image_upto(form: QuadraticForm, n_max: int) -> set[int]:
    """All positive values of Q on integer vectors, up to n_max."""
    diag = all(
        form.gram[i][j] == 0
        for i in range(form.dim)
        for j in range(form.dim)
        if i != j
    )
    if diag and form.dim == 3 and is_positive_definite(form):
        # direct sieve, much faster than the generic recursion
        a, b, c = form.gram[0][0], form.gram[1][1], form.gram[2][2]
        vals = set()
        x = 0
        while a * x * x <= n_max:
            ax = a * x * x
            y = 0
            while ax + b * y * y <= n_max:
                axy = ax + b * y * y
                z = 0
                while axy + c * z * z <= n_max:
                    vals.add(axy + c * z * z)
                    z += 1
                y += 1
            x += 1
        vals.discard(0)
        return vals
    return {q for _, q in vectors_up_to(form, n_max) if q > 0}
