"""Lattices over Q(sqrt2, sqrt3) coordinates in dimensions 1 to 3.

Point isometries are integer matrices acting on lattice coordinates; their
Cartesian form ``B m B^-1`` is derived on demand.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import linalg as la
from .exceptions import NoAxisError, NoLatticePointError
from .scalar import ZERO, AlgebraicScalar

__all__ = [
    "Lattice",
    "PointIsometry",
    "Plane",
    "PlaneSection",
    "member",
    "dual",
    "shell",
    "norm_shells",
    "holohedry",
    "element_order",
    "rotation_axis",
    "plane_intersection",
    "is_hexagonal_2d",
    "reduce_2d",
    "canonical_direction",
]

SHELL_MARGIN = 1e-6


class Lattice:
    """Full-rank lattice spanned by the columns of ``B``.

    Parameters
    ----------
    basis : sequence of vectors
        Generators ``l_1, ..., l_n`` given as Cartesian coordinate sequences;
        entries may be ints, fractions, :class:`AlgebraicScalar` or scalar text.
    """

    def __init__(self, basis):
        vectors = tuple(la.vec(v) for v in basis)
        if not vectors:
            raise ValueError("a lattice needs at least one generator")
        dim = len(vectors[0])
        if len(vectors) != dim or any(len(v) != dim for v in vectors):
            raise ValueError("basis must consist of dim vectors of length dim")
        self.basis = vectors
        self.dim = dim
        self.gram = la.gram(vectors)
        if la.det(self.gram).is_zero():
            raise ValueError("basis vectors are linearly dependent")

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Lattice([{rows}])"

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self is other or self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    @cached_property
    def matrix(self):
        """Basis matrix with the generators as columns."""
        return la.columns_to_matrix(self.basis)

    @cached_property
    def matrix_inverse(self):
        return la.inverse(self.matrix)

    @cached_property
    def float_basis(self) -> np.ndarray:
        """Generators as rows of a float array."""
        return la.to_float_matrix(self.basis)

    @cached_property
    def float_gram(self) -> np.ndarray:
        return la.to_float_matrix(self.gram)

    def coordinates(self, v) -> tuple[AlgebraicScalar, ...]:
        return la.matvec(self.matrix_inverse, la.vec(v))

    def point(self, coords) -> tuple[AlgebraicScalar, ...]:
        return la.matvec(self.matrix, tuple(AlgebraicScalar(c) for c in coords))

    def norm2(self, coords) -> AlgebraicScalar:
        total = ZERO
        for i, ci in enumerate(coords):
            if not ci:
                continue
            for j, cj in enumerate(coords):
                if cj:
                    total = total + self.gram[i][j] * (ci * cj)
        return total

    def inner(self, c1, c2) -> AlgebraicScalar:
        total = ZERO
        for i, ci in enumerate(c1):
            if not ci:
                continue
            for j, cj in enumerate(c2):
                if cj:
                    total = total + self.gram[i][j] * (ci * cj)
        return total

    @cached_property
    def holohedry(self) -> list[PointIsometry]:
        return holohedry(self)

    @cached_property
    def dual(self) -> Lattice:
        return dual(self)


def member(lattice: Lattice, v) -> tuple[int, ...] | None:
    """Integer coordinates of ``v`` in ``lattice`` or ``None``."""
    coords = lattice.coordinates(v)
    if all(c.is_integer() for c in coords):
        return tuple(int(c.as_fraction()) for c in coords)
    return None


def dual(lattice: Lattice) -> Lattice:
    """Lattice of wave vectors ``k`` with integer pairing against every generator."""
    ginv = la.inverse(lattice.gram)
    cols = la.transpose(la.matmul(lattice.matrix, ginv))
    return Lattice(cols)


# enumeration ------------------------------------------------------------


def _enumerate_ball(gram: np.ndarray, bound: float):
    """Integer vectors with float quadratic form at most ``bound`` (Fincke-Pohst)."""
    n = gram.shape[0]
    r = np.linalg.cholesky(gram).T  # gram = r^T r, r upper triangular
    out = []
    coords = [0] * n

    def recurse(i, remaining):
        if i < 0:
            out.append(tuple(coords))
            return
        # contribution of fixed coordinates j > i to row i
        shift = sum(r[i, j] * coords[j] for j in range(i + 1, n)) / r[i, i]
        radius = math.sqrt(max(remaining, 0.0)) / r[i, i]
        lo = math.ceil(-shift - radius - 1e-9)
        hi = math.floor(-shift + radius + 1e-9)
        for ci in range(lo, hi + 1):
            coords[i] = ci
            t = r[i, i] * (ci + shift)
            rest = remaining - t * t
            if rest >= -1e-9 * max(bound, 1.0):
                recurse(i - 1, rest)
        coords[i] = 0

    recurse(n - 1, bound)
    return out


def shell(lattice: Lattice, r2) -> list[tuple[int, ...]]:
    """Integer coordinates of all lattice vectors with squared norm exactly ``r2``."""
    r2 = AlgebraicScalar.coerce(r2)
    if r2.sign() <= 0:
        raise ValueError("shell radius must be positive")
    target = float(r2)
    bound = target * (1 + SHELL_MARGIN)
    g = lattice.float_gram
    found = []
    for c in _enumerate_ball(g, bound):
        approx = float(np.dot(c, g @ np.array(c, dtype=float)))
        if abs(approx - target) <= SHELL_MARGIN * target and lattice.norm2(c) == r2:
            found.append(c)
    return sorted(found)


def norm_shells(lattice: Lattice, max_r2: float) -> list[tuple[AlgebraicScalar, list]]:
    """All nonzero lattice vectors up to ``max_r2`` grouped by exact norm, in
    increasing order."""
    groups: dict[AlgebraicScalar, list] = {}
    for c in _enumerate_ball(lattice.float_gram, max_r2 * (1 + SHELL_MARGIN)):
        if not any(c):
            continue
        groups.setdefault(lattice.norm2(c), []).append(c)
    keys = sorted(groups)
    return [(k, sorted(groups[k])) for k in keys if float(k) <= max_r2 * (1 + SHELL_MARGIN)]


# point isometries --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PointIsometry:
    """Lattice-preserving orthogonal map stored in lattice coordinates."""

    lattice: Lattice
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(tuple(int(x) for x in row) for row in self.m))

    def __eq__(self, other):
        if not isinstance(other, PointIsometry):
            return NotImplemented
        return self.m == other.m and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"PointIsometry(m={self.m})"

    @cached_property
    def cartesian(self):
        lat = self.lattice
        return la.matmul(la.matmul(lat.matrix, self._field_m), lat.matrix_inverse)

    @cached_property
    def _field_m(self):
        return tuple(tuple(AlgebraicScalar(x) for x in row) for row in self.m)

    @property
    def det(self) -> int:
        return la.int_det(self.m)

    def __matmul__(self, other: PointIsometry) -> PointIsometry:
        return PointIsometry(self.lattice, la.int_matmul(self.m, other.m))

    def inverse(self) -> PointIsometry:
        return PointIsometry(self.lattice, la.int_inverse_unimodular(self.m))

    def is_identity(self) -> bool:
        return self.m == la.int_identity(len(self.m))

    def is_orthogonal(self) -> bool:
        metric = self.lattice.gram
        fm = self._field_m
        return la.matmul(la.matmul(la.transpose(fm), metric), fm) == metric

    @classmethod
    def identity(cls, lattice: Lattice) -> PointIsometry:
        return cls(lattice, la.int_identity(lattice.dim))

    @classmethod
    def from_cartesian(cls, lattice: Lattice, q) -> PointIsometry:
        """Convert a Cartesian orthogonal matrix; raises ``ValueError`` when it
        does not preserve the lattice."""
        q = la.mat(q)
        m = la.matmul(la.matmul(lattice.matrix_inverse, q), lattice.matrix)
        if not all(x.is_integer() for row in m for x in row):
            raise ValueError("matrix does not map the lattice to itself")
        g = cls(lattice, tuple(tuple(int(x.as_fraction()) for x in row) for row in m))
        if not g.is_orthogonal():
            raise ValueError("matrix is not orthogonal")
        return g


def holohedry(lattice: Lattice) -> list[PointIsometry]:
    """All Gram-preserving integer matrices (the lattice holohedry)."""
    n = lattice.dim
    metric = lattice.gram
    candidates = [shell(lattice, metric[i][i]) for i in range(n)]
    gf = lattice.float_gram
    fc = [[np.array(c, dtype=float) for c in cs] for cs in candidates]

    def ok(i, ci, j, cj, k_i, k_j):
        if abs(fc[i][k_i] @ gf @ fc[j][k_j] - gf[i, j]) > 1e-6 * (1 + abs(gf[i, j])):
            return False
        return lattice.inner(ci, cj) == metric[i][j]

    found = []

    def extend(chosen, idx):
        i = len(chosen)
        if i == n:
            cols = [c for c, _ in chosen]
            m = tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))
            found.append(PointIsometry(lattice, m))
            return
        for k, c in enumerate(candidates[i]):
            if all(ok(j, cj, i, c, kj, k) for j, (cj, kj) in enumerate(chosen)):
                extend(chosen + [(c, k)], idx)

    extend([], 0)
    found = [g for g in found if g.is_orthogonal()]
    ident = la.int_identity(n)
    found.sort(key=lambda g: (g.m != ident, g.m))
    return found


def element_order(g: PointIsometry, limit: int = 12) -> int:
    p = g
    for k in range(1, limit + 1):
        if p.is_identity():
            return k
        p = p @ g
    raise ValueError("element has no finite order below limit")


def canonical_direction(v):
    """Scale-free sign convention: first nonzero coordinate positive."""
    for x in v:
        s = x.sign()
        if s:
            return tuple(v) if s > 0 else tuple(-y for y in v)
    return tuple(v)


def _primitive(ints):
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def rotation_axis(g: PointIsometry):
    """Nonzero Cartesian vector fixed by a proper rotation in dimension 3."""
    if g.lattice.dim != 3:
        raise NoAxisError("rotation axes are defined in dimension 3")
    if g.det != 1 or g.is_identity():
        raise NoAxisError("identity and improper elements have no rotation axis")
    a = [tuple(g.m[i][j] - (i == j) for j in range(3)) for i in range(3)]
    _, kernel = la.solve_integer(a, (0, 0, 0))
    if len(kernel) != 1:
        raise NoAxisError("fixed space is not one-dimensional")
    k = _primitive(kernel[0])
    return canonical_direction(g.lattice.point(k))


# planes -----------------------------------------------------------------


@dataclass(frozen=True)
class Plane:
    """Affine plane ``{p : <normal, p> = offset}``."""

    normal: tuple
    offset: AlgebraicScalar = field(default=ZERO)

    def __post_init__(self):
        object.__setattr__(self, "normal", la.vec(self.normal))
        object.__setattr__(self, "offset", AlgebraicScalar.coerce(self.offset))
        if la.is_zero_vector(self.normal):
            raise ValueError("plane normal must be nonzero")

    def contains(self, p) -> bool:
        return la.dot(self.normal, la.vec(p)) == self.offset

    def through_origin(self) -> Plane:
        return Plane(self.normal)


class PlaneSection(NamedTuple):
    rank: int
    generators: list
    origin: tuple | None


def plane_intersection(lattice: Lattice, plane: Plane, strict: bool = False) -> PlaneSection:
    """Sublattice of ``L - v`` lying in the direction space of ``plane`` where
    ``v`` is a lattice point on the plane.

    With no lattice point on the plane the rank is 0 and ``origin`` is
    ``None``; ``strict=True`` raises :class:`NoLatticePointError` instead.
    """
    w = la.matvec(la.transpose(lattice.matrix), plane.normal)
    x0, kernel = la.solve_field_integer([w], [plane.offset], lattice.dim)
    if x0 is None:
        if strict:
            raise NoLatticePointError("no lattice point lies on the plane")
        return PlaneSection(0, [], None)
    gens = [lattice.point(k) for k in kernel]
    if len(gens) == 2:
        gens = list(reduce_2d(gens))
    elif len(gens) == 1:
        gens = [canonical_direction(gens[0])]
    return PlaneSection(len(gens), gens, lattice.point(x0))


# two-dimensional reduction ----------------------------------------------


def _norm2(v):
    return la.dot(v, v)


def _nearest_int(x: AlgebraicScalar) -> int:
    return (x + Fraction(1, 2)).floor()


def reduce_2d(gens):
    """Canonical Gauss-reduced basis of the rank-2 group spanned by ``gens``.

    The first vector is the lexicographically largest shortest vector; the
    second is the lexicographically largest among the shortest vectors
    independent of it that make a non-obtuse angle with it.
    """
    u, v = (la.vec(g) for g in gens)
    for _ in range(10000):
        if _norm2(v) < _norm2(u):
            u, v = v, u
        mu = _nearest_int(la.dot(u, v) / _norm2(u))
        if mu == 0:
            break
        v = la.sub(v, la.scale(mu, u))
    else:  # pragma: no cover
        raise RuntimeError("Gauss reduction did not converge")
    cands = []
    for i, j in itertools.product(range(-2, 3), repeat=2):
        if i == 0 and j == 0:
            continue
        cands.append(la.add(la.scale(i, u), la.scale(j, v)))
    norms = [_norm2(c) for c in cands]
    m1 = min(norms)
    first = max(c for c, n in zip(cands, norms) if n == m1)
    gf = la.gram([u, v])
    # independence tested through the exact 2x2 Gram determinant
    rest = []
    for c, n in zip(cands, norms):
        if la.det(la.gram([first, c])).is_zero():
            continue
        rest.append((n, c))
    m2 = min(n for n, _ in rest)
    second = max(c for n, c in rest if n == m2 and la.dot(first, c).sign() >= 0)
    assert la.det(la.gram([first, second])) == la.det(gf)
    return first, second


def is_hexagonal_2d(lattice: Lattice) -> bool:
    if lattice.dim != 2:
        raise ValueError("is_hexagonal_2d expects a plane lattice")
    group = lattice.holohedry
    return len(group) == 12 and any(element_order(g) == 6 for g in group)
