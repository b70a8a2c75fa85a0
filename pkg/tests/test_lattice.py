import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from crystalproj import linalg as la
from crystalproj.exceptions import NoAxisError
from crystalproj.lattice import (
    Lattice,
    Plane,
    PointIsometry,
    dual,
    element_order,
    holohedry,
    is_hexagonal_2d,
    member,
    plane_intersection,
    rotation_axis,
    shell,
)
from crystalproj.presets import PRESET_NAMES, preset_lattice
from crystalproj.scalar import S

Z3 = Lattice([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
HEX2 = Lattice([(1, 0), ("1/2", "r3/2")])
BRAVAIS = ["cubic", "bcc", "fcc", "hexagonal", "rhombohedral"]

# rotations listed alongside the four cube diagonals
DIAGONAL_ROTATIONS = {
    1: ((0, -1, 0), (0, 0, 1), (-1, 0, 0)),
    2: ((0, 1, 0), (0, 0, -1), (-1, 0, 0)),
    3: ((0, 0, 1), (-1, 0, 0), (0, -1, 0)),
    4: ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
}


def same_set(a: Lattice, b: Lattice) -> bool:
    return all(member(a, v) is not None for v in b.basis) and all(member(b, v) is not None for v in a.basis)


def parallel(u, v) -> bool:
    u, v = [float(x) for x in u], [float(x) for x in v]
    return np.allclose(np.cross(u, v), 0)


class TestLattice:
    def test_rank_deficient_rejected(self):
        with pytest.raises(ValueError):
            Lattice([(1, 0, 0), (2, 0, 0), (0, 0, 1)])

    def test_gram(self):
        lat = preset_lattice("cubic-p1")
        assert lat.gram == la.gram(lat.basis)
        assert [lat.gram[i][i] for i in range(3)] == [1, 1, S("1/2")]

    def test_member_examples(self):
        assert member(Z3, (1, 0, 1)) == (1, 0, 1)
        assert member(preset_lattice("cubic-p1"), (0, 0, S("3/r6"))) == (1, 1, -3)
        assert member(Z3, (S("1/2"), 0, 0)) is None


class TestDual:
    def test_cubic_self_dual(self):
        assert same_set(dual(Z3), Z3)

    def test_hexagonal(self):
        expected = Lattice([(1, "-r3/3"), (0, "2*r3/3")])
        assert same_set(dual(HEX2), expected)

    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_pairings_integral_and_double_dual(self, name):
        lat = preset_lattice(name)
        D = dual(lat)
        for k in D.basis:
            for l in lat.basis:
                assert la.dot(k, l).is_integer()
        assert same_set(dual(D), lat)


class TestShell:
    def test_cubic_unit_shells(self):
        assert len(shell(Z3, 1)) == 6
        pts = {Z3.point(c) for c in shell(Z3, 2)}
        # brute-force oracle over the box [-2, 2]^3
        brute = {tuple(S(x) for x in c) for c in itertools.product(range(-2, 3), repeat=3) if sum(x * x for x in c) == 2}
        assert pts == brute and len(pts) == 12

    def test_reference_dual_shell(self):
        assert len(shell(dual(preset_lattice("cubic-p1")), 2)) == 6

    @pytest.mark.parametrize("name", BRAVAIS)
    @pytest.mark.parametrize("r2", ["1", "2", "3", "4", "19/12"])
    def test_brute_force_oracle(self, name, r2):
        lat = preset_lattice(name)
        got = set(shell(lat, r2))
        brute = {
            c
            for c in itertools.product(range(-6, 7), repeat=3)
            if lat.norm2(c) == S(r2)
        }
        assert got == brute

    @pytest.mark.parametrize("name", BRAVAIS)
    def test_symmetric_under_negation_and_holohedry(self, name):
        lat = preset_lattice(name)
        r2 = lat.gram[0][0]
        pts = set(shell(lat, r2))
        assert {tuple(-x for x in c) for c in pts} == pts
        for g in holohedry(lat):
            assert {tuple(sum(g.m[i][j] * c[j] for j in range(3)) for i in range(3)) for c in pts} == pts


class TestHolohedry:
    def test_cubic_counts(self):
        holo = holohedry(Z3)
        rot = [g for g in holo if g.det == 1]
        assert len(holo) == 48 and len(rot) == 24
        assert sum(element_order(g) == 3 for g in rot) == 8

    def test_cubic_matches_signed_permutations(self):
        # oracle: integer matrices with entries in {-1,0,1} and m^T m = I
        brute = set()
        for entries in itertools.product((-1, 0, 1), repeat=9):
            m = np.array(entries).reshape(3, 3)
            if (m.T @ m == np.eye(3)).all():
                brute.add(tuple(map(tuple, m.tolist())))
        assert {g.m for g in holohedry(Z3)} == brute

    def test_hexagonal_plane_lattice(self):
        assert len(holohedry(HEX2)) == 12

    @pytest.mark.parametrize(
        "name, params, rotations, total",
        [
            ("hexagonal", {"c": "2"}, 12, 24),
            ("rhombohedral", {"a": "2"}, 6, 12),
            ("tetragonal", {"c": "2"}, 8, 16),
            ("orthorhombic", {}, 4, 8),
            ("triclinic", {}, 1, 2),
            ("bcc", {}, 24, 48),
            ("fcc", {}, 24, 48),
        ],
    )
    def test_counts(self, name, params, rotations, total):
        holo = holohedry(preset_lattice(name, **params))
        assert len(holo) == total
        assert sum(g.det == 1 for g in holo) == rotations

    @pytest.mark.parametrize("name", BRAVAIS + ["cubic-p1"])
    def test_group_structure(self, name):
        lat = preset_lattice(name)
        holo = holohedry(lat)
        ms = {g.m for g in holo}
        ident = PointIsometry.identity(lat)
        assert ident.m in ms
        assert tuple(tuple(-x for x in row) for row in ident.m) in ms
        for g in holo:
            assert g.is_orthogonal() and g.det in (1, -1)
            assert g.inverse().m in ms
            assert element_order(g) in (1, 2, 3, 4, 6)
            for b in lat.basis:
                assert member(lat, la.matvec(g.cartesian, b)) is not None
        for g, h in itertools.product(holo, repeat=2):
            assert (g @ h).m in ms


class TestAxes:
    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_listed_rotations(self, i):
        g = PointIsometry(Z3, DIAGONAL_ROTATIONS[i])
        assert element_order(g) == 3

    def test_listed_axes(self):
        assert parallel(rotation_axis(PointIsometry(Z3, DIAGONAL_ROTATIONS[4])), (1, 1, 1))
        # the printed first matrix fixes (1,-1,-1), the second (1,1,-1)
        assert parallel(rotation_axis(PointIsometry(Z3, DIAGONAL_ROTATIONS[1])), (1, -1, -1))
        assert parallel(rotation_axis(PointIsometry(Z3, DIAGONAL_ROTATIONS[2])), (1, 1, -1))

    def test_all_order3_axes_are_diagonals(self):
        diagonals = [(1, 1, -1), (1, -1, -1), (1, -1, 1), (1, 1, 1)]
        for g in holohedry(Z3):
            if g.det == 1 and element_order(g) == 3:
                assert any(parallel(rotation_axis(g), d) for d in diagonals)

    def test_hexagonal_six_fold(self):
        lat = preset_lattice("hexagonal")
        rho = PointIsometry.from_cartesian(lat, (("1/2", "-r3/2", 0), ("r3/2", "1/2", 0), (0, 0, 1)))
        assert element_order(rho) == 6
        assert parallel(rotation_axis(rho), (0, 0, 1))

    def test_no_axis(self):
        with pytest.raises(NoAxisError):
            rotation_axis(PointIsometry.identity(Z3))
        with pytest.raises(NoAxisError):
            rotation_axis(PointIsometry(Z3, ((-1, 0, 0), (0, -1, 0), (0, 0, -1))))


class TestPlanes:
    def test_sublattice_in_first_plane(self):
        sec = plane_intersection(Z3, Plane((1, 1, -1)))
        assert sec.rank == 2
        assert same_set(Lattice([v[:2] for v in sec.generators]), Lattice([(0, 1), (1, 0)]))
        expected = [(0, 1, 1), (1, 0, 1)]
        for v in expected:
            c = la.solve_field_integer([list(col) for col in zip(*sec.generators)], v, 2)[0]
            assert c is not None

    def test_horizontal_plane(self):
        sec = plane_intersection(Z3, Plane((0, 0, 1)))
        assert sec.rank == 2
        assert {tuple(v) for v in sec.generators} <= {(S(1), S(0), S(0)), (S(0), S(1), S(0)), (S(-1), S(0), S(0)), (S(0), S(-1), S(0))}

    def test_irrational_offset_has_no_points(self):
        sec = plane_intersection(Z3, Plane((0, 0, 1), S("r2/2")))
        assert sec.rank == 0
        lat = preset_lattice("triclinic")
        assert plane_intersection(lat, Plane((0, 0, 1), S("r2/2"))).rank == 0
        # oracle: no small-coefficient point of either lattice sits at that height
        for M in (Z3, lat):
            assert not any(M.point(c)[2] == S("r2/2") for c in itertools.product(range(-4, 5), repeat=3))

    @given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
    def test_members_of_section_lie_in_plane(self, a, b, c):
        normal = (1, 1, -1)
        sec = plane_intersection(Z3, Plane(normal))
        v = la.add(la.scale(a, sec.generators[0]), la.scale(b, sec.generators[1]))
        assert la.dot(normal, v).is_zero() and member(Z3, v) is not None


class TestHexagonal2D:
    def test_examples(self):
        assert is_hexagonal_2d(HEX2)
        assert not is_hexagonal_2d(Lattice([(1, 0), (0, 1)]))
        assert is_hexagonal_2d(Lattice([("1/2", "r3/6"), ("1/2", "-r3/6")]))
        assert len(holohedry(Lattice([(1, 0), (0, 1)]))) == 8
