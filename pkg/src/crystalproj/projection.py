"""Decision procedures about projected lattices: lifting and descending point
group elements, rational compatibility, the hexagonal classifier and the
enumeration of hexagonal projection planes."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import NamedTuple

import numpy as np

from . import linalg as la
from .exceptions import HypothesisNotMetError, NormalizationOutsideFieldError
from .groups import (
    Isometry,
    ProjectedLattice,
    SpaceGroup,
    contains,
    is_projected_symmetry,
    projected_group,
    projected_lattice,
)
from .lattice import (
    Lattice,
    Plane,
    PointIsometry,
    element_order,
    is_hexagonal_2d,
    member,
    plane_intersection,
    reduce_2d,
    rotation_axis,
)
from .scalar import ONE, ZERO, AlgebraicScalar

__all__ = [
    "R_MAX",
    "projected_lattice",
    "lift_check",
    "descend_check",
    "rationally_compatible",
    "check_depth_rationality",
    "check_rotated_generators",
    "hexagonal_classifier",
    "enumerate_hexagonal_planes",
    "change_of_coordinates",
    "project_into_plane",
    "analyze_projection",
    "HexagonalWitness",
    "HexagonalPlane",
    "ProjectionReport",
]

R_MAX = 1000


def _planar_matrix(alpha):
    if isinstance(alpha, PointIsometry):
        return alpha.cartesian
    return la.mat(alpha)


def _in_holohedry(lattice: Lattice, q) -> bool:
    try:
        PointIsometry.from_cartesian(lattice, q)
    except ValueError:
        return False
    return True


def lift_check(alpha, lattice) -> str:
    """Which block extensions ``alpha_+ = diag(alpha, 1)`` and
    ``alpha_- = diag(alpha, -1)`` preserve the lattice.

    Returns ``"plus"``, ``"minus"``, ``"both"`` or ``"neither"``.
    """
    if isinstance(lattice, SpaceGroup):
        lattice = lattice.lattice
    a = _planar_matrix(alpha)
    plus = _in_holohedry(lattice, la.block_diag(a, 1))
    minus = _in_holohedry(lattice, la.block_diag(a, -1))
    if plus and minus:
        return "both"
    if plus:
        return "plus"
    if minus:
        return "minus"
    return "neither"


def _descend_conditions(group: SpaceGroup, plus, sigma, origin=None) -> tuple[bool, bool]:
    lat = group.lattice
    first = not _in_holohedry(lat, sigma)
    second = False
    for q in (plus, la.matmul(plus, sigma)):
        if origin is None:
            g = Isometry.pure_point(q)
        else:
            g = Isometry(la.sub(origin, la.matvec(q, origin)), q)
        if contains(group, g):
            second = True
            break
    return first, second


def descend_check(group: SpaceGroup, alpha) -> bool:
    """Sufficient test that ``alpha`` preserves every projected lattice.

    True when the horizontal reflection is not a lattice symmetry, or when a
    pure point element ``(0, alpha_+)`` or ``(0, alpha_-)`` lies in the group.
    Returns False (inconclusive) when neither lift of ``alpha`` is a lattice
    symmetry.
    """
    a = _planar_matrix(alpha)
    if lift_check(a, group.lattice) == "neither":
        return False
    n = len(a)
    sigma = la.block_diag(la.identity(n), -1)
    return any(_descend_conditions(group, la.block_diag(a, 1), sigma))


# rational compatibility --------------------------------------------------


def _generators(lt) -> list:
    if isinstance(lt, ProjectedLattice):
        return list(lt.generators)
    if isinstance(lt, Lattice):
        return list(lt.basis)
    return [la.vec(v) for v in lt]


def rationally_compatible(lt, lattice: Lattice, r_max: int = R_MAX) -> int | None:
    """Smallest ``r >= 1`` with ``r * (v, 0)`` in ``lattice`` for every
    generator ``v`` of ``lt``; ``None`` if none exists up to ``r_max``."""
    r = 1
    for v in _generators(lt):
        coords = lattice.coordinates(tuple(v) + (ZERO,))
        if not all(c.is_rational() for c in coords):
            return None
        r = lcm(r, *(c.as_fraction().denominator for c in coords))
        if r > r_max:
            return None
    return r


class DepthRationalityReport(NamedTuple):
    vertical_in_lattice: bool
    normal_rational: bool | None
    compatible: bool
    r: int | None


def check_depth_rationality(group: SpaceGroup, y0) -> DepthRationalityReport:
    """Rational compatibility of the suspended projected lattice decided
    through the position of ``(0, y0)`` relative to the lattice."""
    y0 = AlgebraicScalar.coerce(y0)
    lat = group.lattice
    vertical = la.zeros(lat.dim - 1) + (y0,)
    full = member(lat, vertical) is not None
    r = rationally_compatible(projected_lattice(group, y0), lat)
    if not full:
        return DepthRationalityReport(False, None, True, r)
    rational = all(la.dot(vertical, b).is_rational() for b in lat.basis)
    return DepthRationalityReport(True, rational, rational, r)


class RotatedGeneratorReport(NamedTuple):
    rho: tuple
    conditions: list
    compatible: bool
    r: int | None


def check_rotated_generators(group: SpaceGroup, y0) -> RotatedGeneratorReport:
    """Per-generator conditions ``a``/``b``/``c`` under which the suspended
    projected lattice is rationally compatible.

    Raises :class:`HypothesisNotMetError` when no point-group element maps
    the first reduced generator to the second.
    """
    y0 = AlgebraicScalar.coerce(y0)
    lat = group.lattice
    n = lat.dim - 1
    pl = projected_lattice(group, y0)
    if pl.rank != 2 or n != 2:
        raise HypothesisNotMetError("projected lattice is not a plane lattice")
    first, second = pl.generators
    planar = projected_group(group, y0)
    rho = next((q for q in planar.point_group if la.matvec(q, first) == second), None)
    if rho is None:
        raise HypothesisNotMetError("no point-group element relates the generators")
    sigma = group.rep_for(la.block_diag(la.identity(n), -1))
    conditions = []
    for v in (first, second):
        a = member(lat, tuple(v) + (ZERO,)) is not None
        b = False
        if sigma is not None:
            x0, _ = la.solve_field_integer(lat.matrix[:n], la.sub(v, sigma.translation[:n]), lat.dim)
            b = x0 is not None
        x0, _ = la.solve_field_integer(lat.matrix[:n], v, lat.dim)
        conditions.append({"a": a, "b": b, "c": x0 is not None})
    compatible = all(any(c.values()) for c in conditions)
    return RotatedGeneratorReport(rho, conditions, compatible, rationally_compatible(pl, lat))


# change of frame ---------------------------------------------------------


def _unit(v, what):
    v = la.vec(v)
    length = la.dot(v, v).sqrt()
    if length is None:
        raise NormalizationOutsideFieldError(f"normalising the {what} needs a square root outside the field")
    return la.scale(length.invert(), v)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _float_frame(normal, w):
    n = np.array([float(x) for x in normal])
    w = np.array([float(x) for x in w])
    e3 = n / np.linalg.norm(n)
    e1 = w / np.linalg.norm(w)
    return np.array([e1, np.cross(e3, e1), e3])


def _default_in_plane(plane: Plane, lattice: Lattice | None):
    """First candidate direction whose length lies in the field: short
    lattice vectors of the section, then projected coordinate axes."""
    n = plane.normal
    cands = []
    if lattice is not None:
        section = plane_intersection(lattice, plane.through_origin())
        gens = section.generators
        cands.extend(gens)
        if section.rank == 2:
            cands.extend([la.add(gens[0], gens[1]), la.sub(gens[0], gens[1])])
    nn = la.dot(n, n)
    for i in range(3):
        e = tuple(ONE if j == i else ZERO for j in range(3))
        cands.append(la.sub(e, la.scale(n[i] / nn, n)))
    cands = [w for w in cands if not la.is_zero_vector(w)]
    return next((w for w in cands if la.dot(w, w).sqrt() is not None), cands[0])


def change_of_coordinates(plane: Plane, in_plane=None, lattice: Lattice | None = None):
    """Orthogonal matrix sending ``plane`` (through the origin) to the
    horizontal plane and its normal to ``+e_z``.

    The first row is the normalised ``in_plane`` direction.  Without one,
    the shortest vector of the lattice section is used when ``lattice`` is
    given, otherwise a projected coordinate axis.
    """
    n = plane.normal
    if len(n) != 3:
        raise ValueError("change_of_coordinates works in dimension 3")
    if in_plane is None:
        w = _default_in_plane(plane, lattice)
    else:
        w = la.vec(in_plane)
        if not la.dot(w, n).is_zero() or la.is_zero_vector(w):
            raise ValueError("in-plane direction must be a nonzero vector orthogonal to the normal")
    try:
        e3 = _unit(n, "normal")
        e1 = _unit(w, "in-plane direction")
    except NormalizationOutsideFieldError as exc:
        raise NormalizationOutsideFieldError(str(exc), approximate=_float_frame(n, w)) from None
    return (e1, _cross(e3, e1), e3)


class PlaneFrame(NamedTuple):
    group: SpaceGroup
    rotation: tuple
    origin: tuple


def project_into_plane(group: SpaceGroup, plane: Plane, in_plane=None) -> PlaneFrame:
    """Re-express ``group`` so that ``plane`` becomes the horizontal plane
    through the origin: translate by a lattice point on it, then rotate."""
    lat = group.lattice
    section = plane_intersection(lat, plane, strict=True)
    a = change_of_coordinates(plane, in_plane, lattice=lat)
    at = la.transpose(a)
    v0 = section.origin
    lattice = Lattice([la.matvec(a, b) for b in lat.basis])
    reps = []
    for g in group.reps:
        t = la.sub(la.add(g.translation, la.matvec(g.linear, v0)), v0)
        reps.append(Isometry(la.matvec(a, t), la.matmul(la.matmul(a, g.linear), at)))
    return PlaneFrame(SpaceGroup(lattice, reps, check=False), a, v0)


# hexagonal planes --------------------------------------------------------


@dataclass(frozen=True)
class HexagonalWitness:
    """Evidence for a hexagonal projection: the 3-fold rotation, the plane
    moved through the origin and the sublattice ``<v, beta v>``.

    ``hypothesis_verified`` records whether the 3-fold rotation is known to
    survive some projection (False means inconclusive, not refuted).
    """

    beta: PointIsometry
    plane: Plane
    generators: tuple
    hypothesis_verified: bool


def _parallel(u, v) -> bool:
    return la.is_zero_vector(_cross(u, v))


def _order3_rotations(lattice: Lattice):
    return [g for g in lattice.holohedry if g.det == 1 and not g.is_identity() and element_order(g) == 3]


def _reflection_through(normal):
    nn = la.dot(normal, normal)
    return tuple(
        tuple((ONE if i == j else ZERO) - 2 * normal[i] * normal[j] / nn for j in range(3))
        for i in range(3)
    )


def hexagonal_classifier(lattice: Lattice, plane: Plane, group: SpaceGroup | None = None):
    """Whether projections of ``lattice`` into ``plane`` form a hexagonal
    plane lattice.

    Returns ``(verdict, witness)``; the witness is ``None`` when the verdict
    is False.
    """
    if lattice.dim != 3:
        raise ValueError("hexagonal_classifier expects a 3-dimensional lattice")
    section = plane_intersection(lattice, plane)
    if section.rank == 0:
        return False, None
    beta = next((g for g in _order3_rotations(lattice) if _parallel(rotation_axis(g), plane.normal)), None)
    if beta is None:
        return False, None
    gens = section.generators
    v = gens[0] if section.rank == 1 else reduce_2d(gens)[0]
    bv = la.matvec(beta.cartesian, v)
    if group is None:
        group = SpaceGroup.holohedral(lattice)
    first, second = _descend_conditions(group, beta.cartesian, _reflection_through(plane.normal), section.origin)
    witness = HexagonalWitness(beta, plane.through_origin(), reduce_2d([v, bv]), first or second)
    return True, witness


class HexagonalPlane(NamedTuple):
    axis: tuple
    plane: Plane
    generators: tuple
    beta: PointIsometry


def enumerate_hexagonal_planes(lattice: Lattice) -> list[HexagonalPlane]:
    """One entry per 3-fold axis whose perpendicular plane through the
    origin meets the lattice in a hexagonal sublattice."""
    seen = {}
    for g in _order3_rotations(lattice):
        axis = rotation_axis(g)
        if axis not in seen:
            seen[axis] = g
    out = []
    for axis, beta in sorted(seen.items(), key=lambda kv: tuple(float(x) for x in kv[0]), reverse=True):
        plane = Plane(axis)
        section = plane_intersection(lattice, plane)
        if section.rank == 0:
            continue
        v = section.generators[0] if section.rank == 1 else reduce_2d(section.generators)[0]
        out.append(HexagonalPlane(axis, plane, reduce_2d([v, la.matvec(beta.cartesian, v)]), beta))
    return out


# reports -----------------------------------------------------------------


@dataclass
class ProjectionReport:
    y0: AlgebraicScalar
    projected_lattice: ProjectedLattice
    condition_trace: list
    rationally_compatible: int | None
    hexagonal: bool
    witnesses: HexagonalWitness | None
    projected_group: SpaceGroup | None


def analyze_projection(group: SpaceGroup, y0, plane: Plane | None = None, in_plane=None) -> ProjectionReport:
    """Projected lattice, per-generator conditions, rational compatibility and
    the hexagonal verdict for one depth, optionally into a tilted plane."""
    y0 = AlgebraicScalar.coerce(y0)
    frame_group = group if plane is None else project_into_plane(group, plane, in_plane).group
    pl = projected_lattice(frame_group, y0)
    trace = [is_projected_symmetry(frame_group, y0, Isometry.pure_translation(v))[1] for v in pl.generators]
    r = rationally_compatible(pl, frame_group.lattice) if pl.rank else None
    hexagonal = pl.rank == 2 and pl.dim == 2 and is_hexagonal_2d(pl.lattice)
    witnesses = None
    if hexagonal:
        target = plane if plane is not None else Plane((0, 0, 1))
        _, witnesses = hexagonal_classifier(group.lattice, target, group)
    planar = projected_group(frame_group, y0) if not pl.degenerate else None
    return ProjectionReport(y0, pl, trace, r, hexagonal, witnesses, planar)
