"""Exact dense linear algebra over Q(sqrt2, sqrt3) and over the integers.

Vectors are tuples of :class:`AlgebraicScalar`; matrices are tuples of rows.
The integer routines (Hermite elimination, integer system solving) back every
"is there an integer coordinate vector such that ..." question in the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .scalar import ONE, ZERO, AlgebraicScalar

Vector = tuple
Matrix = tuple


def vec(values) -> Vector:
    return tuple(AlgebraicScalar.coerce(x) for x in values)


def mat(rows) -> Matrix:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def dot(u, v) -> AlgebraicScalar:
    total = ZERO
    for x, y in zip(u, v):
        total = total + x * y
    return total


def add(u, v) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def sub(u, v) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def scale(k, u) -> Vector:
    return tuple(x * k for x in u)


def transpose(m) -> Matrix:
    return tuple(zip(*m))


def matvec(m, v) -> Vector:
    return tuple(dot(row, v) for row in m)


def matmul(a, b) -> Matrix:
    cols = transpose(b)
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def columns_to_matrix(cols) -> Matrix:
    return transpose(cols)


def is_zero_vector(v) -> bool:
    return all(x.is_zero() for x in v)


def to_float_matrix(m):
    return np.array([[float(x) for x in row] for row in m], dtype=float)


def det(m) -> AlgebraicScalar:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    raise ValueError("determinant implemented for n <= 3")


def inverse(m) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError for singular input."""
    n = len(m)
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv_p = rows[col][col].invert()
        rows[col] = [x * inv_p for x in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[n:]) for r in rows)


def block_diag(a, last) -> Matrix:
    """Embed an n x n matrix with a trailing 1 x 1 block ``last``."""
    n = len(a)
    rows = [tuple(a[i]) + (ZERO,) for i in range(n)]
    rows.append((ZERO,) * n + (AlgebraicScalar.coerce(last),))
    return tuple(rows)


def int_matrix(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def int_matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def int_identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def int_det(m) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum(
        (-1) ** j * m[0][j] * int_det(tuple(row[:j] + row[j + 1 :] for row in m[1:]))
        for j in range(n)
    )


def int_inverse_unimodular(m):
    n = len(m)
    d = int_det(m)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    if n == 1:
        return ((d,),)
    cof = [
        [
            (-1) ** (i + j) * int_det(tuple(r[:j] + r[j + 1 :] for k, r in enumerate(m) if k != i))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return tuple(tuple(cof[j][i] * d for j in range(n)) for i in range(n))


# integer elimination ----------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_rows(a: Sequence[Sequence[int]]):
    """Row-style Hermite normal form.

    Returns ``(h, u, pivots)`` with ``u`` unimodular and ``u @ a == h``.  The
    nonzero rows of ``h`` come first, each with a positive pivot strictly to the
    right of the previous one, and entries above a pivot reduced into
    ``[0, pivot)``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(r) for r in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        for r in range(row + 1, m):
            if h[r][col] == 0:
                continue
            g, x, y = _xgcd(h[row][col], h[r][col])
            if h[row][col] == 0 and g == 0:
                continue
            p, q = h[row][col] // g, h[r][col] // g
            # [[x, y], [-q, p]] has determinant 1
            h[row], h[r] = (
                [x * s + y * t for s, t in zip(h[row], h[r])],
                [-q * s + p * t for s, t in zip(h[row], h[r])],
            )
            u[row], u[r] = (
                [x * s + y * t for s, t in zip(u[row], u[r])],
                [-q * s + p * t for s, t in zip(u[row], u[r])],
            )
        if h[row][col] == 0:
            continue
        if h[row][col] < 0:
            h[row] = [-s for s in h[row]]
            u[row] = [-s for s in u[row]]
        piv = h[row][col]
        for r in range(row):
            k = h[r][col] // piv
            if k:
                h[r] = [s - k * t for s, t in zip(h[r], h[row])]
                u[r] = [s - k * t for s, t in zip(u[r], u[row])]
        pivots.append(col)
        row += 1
    return [tuple(r) for r in h], [tuple(r) for r in u], pivots


def integer_span_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """A basis of the Z-module spanned by integer vectors."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    h, _, pivots = hermite_rows(vectors)
    return h[: len(pivots)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], n: int | None = None):
    """All integer solutions of ``a @ x == b``.

    Returns ``(x0, kernel)`` where ``x0`` is one solution (``None`` when the
    system has no integer solution) and ``kernel`` is a basis of the integer
    null space.  ``n`` gives the number of unknowns when ``a`` has no rows.
    """
    m = len(a)
    if n is None:
        n = len(a[0])
    if m == 0:
        return (0,) * n, [tuple(int(i == j) for j in range(n)) for i in range(n)]
    at = [tuple(a[i][j] for i in range(m)) for j in range(n)]
    h, u, pivots = hermite_rows(at)
    # a @ u^T = h^T; substitute x = u^T y
    r = len(pivots)
    y = [0] * n
    for j in range(r):
        p = pivots[j]
        acc = b[p] - sum(h[i][p] * y[i] for i in range(j))
        if acc % h[j][p]:
            return None, [u[i] for i in range(r, n)]
        y[j] = acc // h[j][p]
    for row in range(m):
        if sum(h[i][row] * y[i] for i in range(r)) != b[row]:
            return None, [u[i] for i in range(r, n)]
    x0 = tuple(sum(u[i][k] * y[i] for i in range(n)) for k in range(n))
    return x0, [u[i] for i in range(r, n)]


def expand_rational_rows(rows, rhs):
    """Split field-coefficient equations into rational equations on the
    1, sqrt2, sqrt3, sqrt6 components and clear denominators."""
    int_rows, int_rhs = [], []
    for row, value in zip(rows, rhs):
        comps = [x.components for x in row]
        target = AlgebraicScalar.coerce(value).components
        for k in range(4):
            coefs = [c[k] for c in comps] + [target[k]]
            if all(c == 0 for c in coefs):
                continue
            den = lcm(*(Fraction(c).denominator for c in coefs))
            ints = [int(c * den) for c in coefs]
            int_rows.append(tuple(ints[:-1]))
            int_rhs.append(ints[-1])
    return int_rows, int_rhs


def solve_field_integer(rows, rhs, n: int):
    """Integer solutions ``c`` of ``sum_j rows[i][j] * c[j] == rhs[i]`` where the
    coefficients live in Q(sqrt2, sqrt3)."""
    int_rows, int_rhs = expand_rational_rows(rows, rhs)
    return solve_integer(int_rows, int_rhs, n=n)


def rational_coordinates(v: Vector) -> tuple[Fraction, ...]:
    """Flatten a field vector into its 4*len(v) rational components."""
    out = []
    for x in v:
        out.extend(x.components)
    return tuple(out)


def field_span_basis(vectors) -> list[Vector]:
    """A Z-basis of the additive group generated by field vectors.

    The group is computed exactly inside Q^(4n) via the rational components;
    it is a lattice in R^n only when the returned vectors are R-independent.
    """
    vectors = [tuple(v) for v in vectors if not is_zero_vector(v)]
    if not vectors:
        return []
    flat = [rational_coordinates(v) for v in vectors]
    den = lcm(*(c.denominator for row in flat for c in row))
    ints = [tuple(int(c * den) for c in row) for row in flat]
    basis = integer_span_basis(ints)
    dim = len(vectors[0])
    out = []
    for row in basis:
        comps = [Fraction(x, den) for x in row]
        out.append(tuple(AlgebraicScalar(*comps[4 * i : 4 * i + 4]) for i in range(dim)))
    return out


def gram(vectors) -> Matrix:
    return tuple(tuple(dot(u, v) for v in vectors) for u in vectors)
