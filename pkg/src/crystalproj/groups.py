"""Space groups as a lattice plus finite coset representatives, the scanning
subgroup, depth-dependent subgroups and the projected symmetry test.

Throughout, the last coordinate is the projection direction: a point of
R^(n+1) is written ``(v, y)`` with ``v`` horizontal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from . import linalg as la
from .exceptions import DegenerateProjectionError, NotScanningElementError
from .lattice import Lattice, PointIsometry, canonical_direction, member, reduce_2d
from .scalar import ZERO, AlgebraicScalar

__all__ = [
    "Isometry",
    "SpaceGroup",
    "DepthGroup",
    "ProjectedLattice",
    "compose",
    "invert",
    "contains",
    "scanning_sign",
    "scanning_subgroup",
    "gamma_y0",
    "project_h",
    "is_projected_symmetry",
    "projected_lattice",
    "projected_group",
    "reduce_translation",
    "generated_group",
]


@dataclass(frozen=True)
class Isometry:
    """Euclidean motion ``x -> translation + linear @ x`` with exact entries."""

    translation: tuple
    linear: tuple

    def __post_init__(self):
        object.__setattr__(self, "translation", la.vec(self.translation))
        object.__setattr__(self, "linear", la.mat(self.linear))
        if len(self.linear) != len(self.translation):
            raise ValueError("translation and linear part disagree in dimension")

    @property
    def dim(self) -> int:
        return len(self.translation)

    def __matmul__(self, other: Isometry) -> Isometry:
        return compose(self, other)

    def inverse(self) -> Isometry:
        return invert(self)

    def apply(self, x) -> tuple:
        return la.add(self.translation, la.matvec(self.linear, la.vec(x)))

    @classmethod
    def identity(cls, dim: int) -> Isometry:
        return cls(la.zeros(dim), la.identity(dim))

    @classmethod
    def pure_translation(cls, v) -> Isometry:
        v = la.vec(v)
        return cls(v, la.identity(len(v)))

    @classmethod
    def pure_point(cls, linear) -> Isometry:
        linear = la.mat(linear)
        return cls(la.zeros(len(linear)), linear)

    def __repr__(self):
        t = ", ".join(str(x) for x in self.translation)
        rows = "; ".join(" ".join(str(x) for x in r) for r in self.linear)
        return f"Isometry(({t}), [{rows}])"


def compose(g: Isometry, h: Isometry) -> Isometry:
    """``(v, d) . (w, e) = (v + d w, d e)``."""
    return Isometry(la.add(g.translation, la.matvec(g.linear, h.translation)), la.matmul(g.linear, h.linear))


def invert(g: Isometry) -> Isometry:
    # orthogonal linear part: inverse is the transpose
    lt = la.transpose(g.linear)
    return Isometry(tuple(-x for x in la.matvec(lt, g.translation)), lt)


class _Rep(NamedTuple):
    isometry: Isometry
    point: PointIsometry
    coords: tuple  # translation in lattice coordinates


class SpaceGroup:
    """Crystallographic group given by its lattice and coset representatives.

    Parameters
    ----------
    lattice : Lattice
        Translation subgroup.
    reps : iterable of Isometry
        One representative per point-group element; the identity must be
        present with a lattice translation.
    check : bool, default=True
        Verify that the point parts preserve the lattice and that the
        representatives close up modulo the lattice.
    """

    def __init__(self, lattice: Lattice, reps, check: bool = True):
        self.lattice = lattice
        self._reps: list[_Rep] = []
        self._by_m: dict = {}
        self._by_linear: dict = {}
        for g in reps:
            if g.dim != lattice.dim:
                raise ValueError("representative dimension differs from the lattice")
            p = PointIsometry.from_cartesian(lattice, g.linear)
            if p.m in self._by_m:
                raise ValueError("coset representatives must have distinct point parts")
            rep = _Rep(g, p, lattice.coordinates(g.translation))
            self._by_m[p.m] = rep
            self._by_linear[g.linear] = rep
            self._reps.append(rep)
        ident = la.int_identity(lattice.dim)
        if ident not in self._by_m or not all(c.is_integer() for c in self._by_m[ident].coords):
            raise ValueError("the identity must be a representative with a lattice translation")
        if check:
            self._check_closure()

    def _check_closure(self):
        for a in self._reps:
            for b in self._reps:
                m = la.int_matmul(a.point.m, b.point.m)
                target = self._by_m.get(m)
                if target is None:
                    raise ValueError("point parts are not closed under composition")
                coords = la.add(a.coords, la.matvec(a.point._field_m, b.coords))
                if not all(x.is_integer() for x in la.sub(coords, target.coords)):
                    raise ValueError("representatives are not closed modulo the lattice")

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def reps(self) -> list[Isometry]:
        return [r.isometry for r in self._reps]

    @property
    def point_group(self) -> list:
        """Cartesian point parts."""
        return [r.isometry.linear for r in self._reps]

    @property
    def order(self) -> int:
        return len(self._reps)

    def rep_for(self, linear) -> Isometry | None:
        linear = la.mat(linear)
        rep = self._by_linear.get(linear)
        if rep is not None:
            return rep.isometry
        try:
            p = PointIsometry.from_cartesian(self.lattice, linear)
        except ValueError:
            return None
        rep = self._by_m.get(p.m)
        return rep.isometry if rep is not None else None

    def contains(self, g: Isometry) -> bool:
        return contains(self, g)

    def generators(self) -> list[Isometry]:
        """Lattice translations followed by the coset representatives."""
        return [Isometry.pure_translation(b) for b in self.lattice.basis] + self.reps

    @classmethod
    def holohedral(cls, lattice: Lattice) -> SpaceGroup:
        """The symmorphic group ``L + H_L``."""
        reps = [Isometry.pure_point(g.cartesian) for g in lattice.holohedry]
        return cls(lattice, reps, check=False)

    @classmethod
    def translations(cls, lattice: Lattice) -> SpaceGroup:
        return cls(lattice, [Isometry.identity(lattice.dim)], check=False)

    def __repr__(self):
        return f"SpaceGroup(dim={self.dim}, order={self.order})"


def contains(group: SpaceGroup, g: Isometry) -> bool:
    rep = group.rep_for(g.linear)
    if rep is None:
        return False
    return member(group.lattice, la.sub(g.translation, rep.translation)) is not None


# scanning ---------------------------------------------------------------


def scanning_sign(linear) -> int:
    """``+1`` or ``-1`` for block forms ``alpha_+`` / ``alpha_-``, else 0."""
    n = len(linear) - 1
    if any(not linear[n][j].is_zero() or not linear[j][n].is_zero() for j in range(n)):
        return 0
    last = linear[n][n]
    if last == 1:
        return 1
    if last == -1:
        return -1
    return 0


def scanning_subgroup(group: SpaceGroup) -> SpaceGroup:
    """Elements whose point part preserves the projection direction up to sign."""
    reps = [g for g in group.reps if scanning_sign(g.linear)]
    return SpaceGroup(group.lattice, reps, check=False)


def _horizontal(v) -> tuple:
    return tuple(v[:-1])


def _vertical_point(dim: int, y0) -> tuple:
    return la.zeros(dim - 1) + (AlgebraicScalar.coerce(y0),)


def _slice_solve(lattice: Lattice, target) -> tuple:
    """Integer solutions ``c`` with last Cartesian coordinate of ``B c`` equal to ``target``."""
    n = lattice.dim - 1
    return la.solve_field_integer([lattice.matrix[n]], [target], lattice.dim)


@dataclass
class DepthGroup:
    """The subgroup of the scanning group that survives projection at depth ``y0``.

    When ``full`` is set the whole scanning group survives.  Otherwise only
    side preserving ``((v, 0), alpha_+)`` and side reversing
    ``((v, y0), alpha_-)`` elements remain; ``reps`` then carry concrete
    translations and the remaining translations form ``slab_generators``.
    """

    scanning: SpaceGroup
    y0: AlgebraicScalar
    full: bool
    reps: list = field(default_factory=list)
    slab_generators: list = field(default_factory=list)

    @property
    def lattice(self) -> Lattice:
        return self.scanning.lattice

    def contains(self, g: Isometry) -> bool:
        s = scanning_sign(g.linear)
        if not s:
            return False
        if self.full:
            return contains(self.scanning, g)
        for rep in self.reps:
            if rep.linear == g.linear:
                diff = la.sub(g.translation, rep.translation)
                return diff[-1].is_zero() and member(self.lattice, diff) is not None
        return False


def gamma_y0(scanning: SpaceGroup, y0) -> DepthGroup:
    y0 = AlgebraicScalar.coerce(y0)
    lat = scanning.lattice
    if member(lat, _vertical_point(lat.dim, y0)) is not None:
        return DepthGroup(scanning, y0, True, scanning.reps, [])
    _, kernel = _slice_solve(lat, ZERO)
    slab = [lat.point(k) for k in kernel]
    reps = []
    for g in scanning.reps:
        s = scanning_sign(g.linear)
        if not s:
            raise NotScanningElementError("gamma_y0 expects a scanning subgroup")
        target = (ZERO if s > 0 else y0) - g.translation[-1]
        x0, _ = _slice_solve(lat, target)
        if x0 is not None:
            reps.append(Isometry(la.add(g.translation, lat.point(x0)), g.linear))
    return DepthGroup(scanning, y0, False, reps, slab)


def project_h(g: Isometry) -> Isometry:
    """``((v, y), alpha_+-) -> (v, alpha)``."""
    if not scanning_sign(g.linear):
        raise NotScanningElementError("point part is not of block form alpha_+-")
    n = g.dim - 1
    return Isometry(g.translation[:n], tuple(row[:n] for row in g.linear[:n]))


def is_projected_symmetry(group: SpaceGroup, y0, s: Isometry) -> tuple[bool, str | None]:
    """Decide whether ``s = (v, alpha)`` leaves every projected function invariant.

    Returns ``(True, tag)`` with the first satisfied condition in the order
    ``"I"``, ``"II"``, ``"III"``, or ``(False, None)``.
    """
    y0 = AlgebraicScalar.coerce(y0)
    lat = group.lattice
    if s.dim != lat.dim - 1:
        raise ValueError("planar isometry must have one dimension less than the group")
    v, alpha = s.translation, s.linear
    plus = group.rep_for(la.block_diag(alpha, 1))
    minus = group.rep_for(la.block_diag(alpha, -1))
    if plus is not None and member(lat, la.sub(v + (ZERO,), plus.translation)) is not None:
        return True, "I"
    if minus is not None and member(lat, la.sub(v + (y0,), minus.translation)) is not None:
        return True, "II"
    if member(lat, _vertical_point(lat.dim, y0)) is not None:
        n = lat.dim - 1
        rows = lat.matrix[:n]
        for rep in (plus, minus):
            if rep is None:
                continue
            x0, _ = la.solve_field_integer(rows, la.sub(v, _horizontal(rep.translation)), lat.dim)
            if x0 is not None:
                return True, "III"
    return False, None


# projected lattice and group ---------------------------------------------


class ProjectedLattice(NamedTuple):
    """Translations of the projected symmetry group; ``rank`` may fall short
    of the planar dimension, in which case ``lattice`` is unavailable."""

    rank: int
    generators: list
    dim: int
    full: bool

    @property
    def lattice(self) -> Lattice:
        if self.rank < self.dim:
            raise DegenerateProjectionError(self.rank, self.generators)
        return Lattice(self.generators)

    @property
    def degenerate(self) -> bool:
        return self.rank < self.dim


def _canonical_basis(gens, dim):
    basis = la.field_span_basis(gens)
    if not basis:
        return []
    if len(basis) > dim or la.det(la.gram(basis)).is_zero():
        raise ValueError("projected translations do not form a discrete group")
    if len(basis) == 2:
        return list(reduce_2d(basis))
    if len(basis) == 1:
        return [canonical_direction(basis[0])]
    return basis


def projected_lattice(group: SpaceGroup, y0) -> ProjectedLattice:
    """Lattice of periods shared by all projected functions at depth ``y0``."""
    y0 = AlgebraicScalar.coerce(y0)
    lat = group.lattice
    n = lat.dim - 1
    full = member(lat, _vertical_point(lat.dim, y0)) is not None
    sigma = group.rep_for(la.block_diag(la.identity(n), -1))
    gens = []
    if full:
        gens = [_horizontal(b) for b in lat.basis]
        if sigma is not None:
            gens.append(_horizontal(sigma.translation))
    else:
        _, kernel = _slice_solve(lat, ZERO)
        gens = [_horizontal(lat.point(k)) for k in kernel]
        if sigma is not None:
            x0, _ = _slice_solve(lat, y0 - sigma.translation[-1])
            if x0 is not None:
                gens.append(_horizontal(la.add(sigma.translation, lat.point(x0))))
    basis = _canonical_basis(gens, n)
    return ProjectedLattice(len(basis), basis, n, full)


def reduce_translation(lattice: Lattice, v) -> tuple:
    """Shortest representative of ``v`` modulo the lattice; ties go to the
    lexicographically largest."""
    coords = lattice.coordinates(v)
    base = la.sub(la.vec(v), lattice.point([c.floor() for c in coords]))
    best = None
    for shift in itertools.product((-1, 0, 1), repeat=lattice.dim):
        cand = la.sub(base, lattice.point(shift))
        key = la.dot(cand, cand)
        if best is None or key < best[0] or (key == best[0] and cand > best[1]):
            best = (key, cand)
    return best[1]


def projected_group(group: SpaceGroup, y0) -> SpaceGroup:
    """Symmetry group of all projected functions at depth ``y0``."""
    y0 = AlgebraicScalar.coerce(y0)
    pl = projected_lattice(group, y0)
    planar = pl.lattice
    depth = gamma_y0(scanning_subgroup(group), y0)
    reps: dict = {}
    for g in depth.reps:
        h = project_h(g)
        if h.linear not in reps:
            reps[h.linear] = Isometry(reduce_translation(planar, h.translation), h.linear)
    ident = la.identity(planar.dim)
    ordered = [reps.pop(ident)] + list(reps.values())
    return SpaceGroup(planar, ordered)


def generated_group(lattice: Lattice, generators) -> SpaceGroup:
    """Group generated by ``lattice`` and the given isometries, as coset
    representatives reduced modulo the lattice."""
    ident = Isometry.identity(lattice.dim)
    reps = {ident.linear: ident}
    frontier = [ident]
    gens = list(generators)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(s, g)
                if h.linear in reps:
                    continue
                h = Isometry(reduce_translation(lattice, h.translation), h.linear)
                reps[h.linear] = h
                nxt.append(h)
        frontier = nxt
        if len(reps) > 48:
            raise ValueError("generators do not give a finite point group")
    return SpaceGroup(lattice, list(reps.values()))
