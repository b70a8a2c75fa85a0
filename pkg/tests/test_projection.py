import numpy as np
import pytest

from conftest import MIRROR_X, ROT60, iso
from crystalproj import linalg as la
from crystalproj.exceptions import HypothesisNotMetError, NormalizationOutsideFieldError
from crystalproj.groups import SpaceGroup, projected_group, projected_lattice
from crystalproj.lattice import Lattice, Plane, holohedry, is_hexagonal_2d, member, rotation_axis
from crystalproj.presets import CUBIC_P1_ROTATION, preset_lattice
from crystalproj.projection import (
    analyze_projection,
    change_of_coordinates,
    check_depth_rationality,
    check_rotated_generators,
    descend_check,
    enumerate_hexagonal_planes,
    hexagonal_classifier,
    lift_check,
    project_into_plane,
    rationally_compatible,
)
from crystalproj.scalar import S

Z3 = preset_lattice("cubic")
BRAVAIS = {
    "cubic": {},
    "bcc": {},
    "fcc": {},
    "hexagonal": {"c": "2"},
    "rhombohedral": {"a": "2"},
}
EX1 = Lattice([(0, 1), ("r2", "1/2")])
EX2 = Lattice([(0, 1), (1, "r2")])
REFERENCE_DEPTHS = ["r6/12", "r6/6", "r6/3", "r6/2"]


def float_compatibility(gens, lattice, r_max=50):
    # independent oracle: floating solve of r * (v, 0) in lattice coordinates
    B = np.array([[float(x) for x in b] for b in lattice.basis]).T
    for r in range(1, r_max + 1):
        ok = True
        for v in gens:
            c = np.linalg.solve(B, r * np.array([float(x) for x in v] + [0.0]))
            ok &= bool(np.allclose(c, np.round(c), atol=1e-9))
        if ok:
            return r
    return None


def parallel(u, v) -> bool:
    return np.allclose(np.cross([float(x) for x in u], [float(x) for x in v]), 0)


class TestLift:
    @pytest.mark.parametrize("name", ["cubic", "bcc", "fcc", "hexagonal", "tetragonal"])
    def test_identity_lifts_both_ways(self, name):
        assert lift_check(((1, 0), (0, 1)), preset_lattice(name)) == "both"

    @pytest.mark.parametrize("name", ["rhombohedral", "cubic-p1"])
    def test_identity_without_horizontal_mirror(self, name):
        # oracle: the horizontal reflection is absent from the holohedry
        lat = preset_lattice(name)
        sigma = la.block_diag(la.identity(2), -1)
        assert all(g.cartesian != sigma for g in holohedry(lat))
        assert lift_check(((1, 0), (0, 1)), lat) == "plus"

    def test_reference_rotation(self):
        assert lift_check(ROT60, preset_lattice("cubic-p1")) == "minus"

    def test_hexagonal(self):
        hex_lattice = preset_lattice("hexagonal")
        assert lift_check(((0, -1), (1, 0)), hex_lattice) == "neither"
        assert lift_check(ROT60, hex_lattice) == "both"


class TestDescend:
    def test_reference_rotation(self, cubic_p1):
        assert descend_check(cubic_p1, ROT60)

    def test_inconclusive_without_point_elements(self):
        # horizontal reflection preserves the lattice but the group has no pure rotations
        lat = preset_lattice("hexagonal")
        assert not descend_check(SpaceGroup.translations(lat), ROT60)

    @pytest.mark.parametrize("y0", REFERENCE_DEPTHS)
    def test_true_results_preserve_projected_lattice(self, cubic_p1, y0):
        pl = projected_lattice(cubic_p1, S(y0)).lattice
        for alpha in holohedry(Lattice([(1, 0), ("1/2", "r3/2")])):
            if descend_check(cubic_p1, alpha.cartesian):
                for v in pl.basis:
                    assert member(pl, la.matvec(alpha.cartesian, v)) is not None


class TestRationalCompatibility:
    def test_first_example(self):
        group = SpaceGroup.translations(EX1)
        for y0 in ["1/2", "1", "r2/2"]:
            pl = projected_lattice(group, S(y0))
            r = rationally_compatible(pl, EX1)
            assert r is not None and r <= 2
            assert r == float_compatibility([v for v in pl.generators], EX1, 10)

    def test_first_example_suspension(self):
        assert rationally_compatible([("r2",)], EX1) == 2

    def test_second_example(self):
        group = SpaceGroup.translations(EX2)
        pl = projected_lattice(group, S(1))
        assert pl.rank == 1
        assert rationally_compatible(pl, EX2) is None
        assert projected_lattice(group, S("1/2")).rank == 0

    def test_reference_row_one(self, cubic_p1):
        pl = projected_lattice(cubic_p1, S("r6/2"))
        r = rationally_compatible(pl, cubic_p1.lattice)
        assert r == 3 == float_compatibility(pl.generators, cubic_p1.lattice)

    @pytest.mark.parametrize("y0", ["r6/12", "r6/6", "r6/3", "1/3"])
    def test_reference_other_rows(self, cubic_p1, y0):
        pl = projected_lattice(cubic_p1, S(y0))
        assert rationally_compatible(pl, cubic_p1.lattice) == 1


class TestPropRational:
    @pytest.mark.parametrize("y0", ["1/2", "r2/2"])
    def test_first_example(self, y0):
        rep = check_depth_rationality(SpaceGroup.translations(EX1), S(y0))
        assert not rep.vertical_in_lattice and rep.compatible and rep.r <= 2

    def test_first_example_vertical(self):
        rep = check_depth_rationality(SpaceGroup.translations(EX1), S(1))
        assert rep.vertical_in_lattice and rep.compatible and rep.r == 2

    def test_cubic(self, cubic):
        rep = check_depth_rationality(cubic, S(1))
        assert rep.vertical_in_lattice and rep.normal_rational and rep.compatible

    def test_second_example(self):
        rep = check_depth_rationality(SpaceGroup.translations(EX2), S(1))
        assert rep.vertical_in_lattice and not rep.compatible and rep.r is None

    @pytest.mark.parametrize("name", ["cubic", "bcc", "fcc", "hexagonal", "rhombohedral", "cubic-p1"])
    @pytest.mark.parametrize("y0", ["1", "1/3", "r6/12", "r6/2"])
    def test_agrees_with_search(self, name, y0):
        group = SpaceGroup.holohedral(preset_lattice(name))
        rep = check_depth_rationality(group, S(y0))
        if projected_lattice(group, S(y0)).rank:
            assert rep.compatible == (rep.r is not None)


class TestRotatedGenerators:
    def test_row_one(self, cubic_p1):
        rep = check_rotated_generators(cubic_p1, S("r6/2"))
        assert all(c["c"] for c in rep.conditions)
        assert rep.compatible and rep.r == 3

    def test_generic_depth(self, cubic_p1):
        rep = check_rotated_generators(cubic_p1, S("r6/12"))
        assert rep.conditions[0]["a"] and rep.compatible

    def test_oblique(self):
        group = SpaceGroup.holohedral(preset_lattice("triclinic"))
        with pytest.raises(HypothesisNotMetError):
            check_rotated_generators(group, S(1))


class TestChangeOfCoordinates:
    def test_horizontal_plane(self):
        assert change_of_coordinates(Plane((0, 0, 1)), (1, 0, 0)) == la.identity(3)

    def test_reference_matrix(self):
        frame_matrix = change_of_coordinates(Plane((1, 1, -1)), (0, 1, 1))
        assert frame_matrix == la.mat(CUBIC_P1_ROTATION)

    @pytest.mark.parametrize("normal", [(1, 1, -1), (1, -1, -1), (1, -1, 1), (1, 1, 1), (0, 0, 1)])
    def test_orthogonal(self, normal):
        frame_matrix = change_of_coordinates(Plane(normal), lattice=Z3)
        assert la.matmul(la.transpose(frame_matrix), frame_matrix) == la.identity(3)
        assert la.det(frame_matrix) in (S(1), S(-1))
        assert la.matvec(frame_matrix, la.vec(normal))[:2] == (S(0), S(0))

    def test_reference_basis(self):
        frame_matrix = la.mat(CUBIC_P1_ROTATION)
        normalised = [la.scale(S("r2/2"), v) for v in [(0, 1, 1), (1, 0, 1), (0, 0, 1)]]
        got = [la.matvec(frame_matrix, v) for v in normalised]
        assert got == [la.vec(v) for v in [(1, 0, 0), ("1/2", "r3/2", 0), ("1/2", "r3/6", "-r6/6")]]

    def test_outside_field(self):
        with pytest.raises(NormalizationOutsideFieldError) as exc:
            change_of_coordinates(Plane((1, 2, 0)), (0, 0, 1))
        assert exc.value.approximate is not None

    def test_project_into_first_plane(self, cubic):
        frame = project_into_plane(cubic, Plane((1, 1, -1)), (0, 1, 1))
        group = projected_group(frame.group, S("r3/12"))
        assert is_hexagonal_2d(group.lattice)


class TestClassifier:
    def test_first_plane(self):
        verdict, w = hexagonal_classifier(Z3, Plane((1, 1, -1)))
        assert verdict and w.hypothesis_verified
        assert w.beta.det == 1 and parallel(rotation_axis(w.beta), (1, 1, -1))
        assert len(w.generators) == 2
        assert all(la.dot(v, v) == 2 for v in w.generators)
        assert la.dot(*w.generators) in (S(1), S(-1))

    def test_first_plane_generators(self):
        _, w = hexagonal_classifier(Z3, Plane((1, 1, -1)))
        span = Lattice([(0, 1, 1), (1, 0, 1), (1, 1, -1)])
        for v in w.generators:
            assert member(span, v) is not None and la.dot(v, (1, 1, -1)).is_zero()

    def test_horizontal_plane_of_cube(self):
        assert hexagonal_classifier(Z3, Plane((0, 0, 1))) == (False, None)

    def test_tetragonal(self):
        lat = preset_lattice("tetragonal", c="2")
        for normal in [(0, 0, 1), (1, 1, 1), (1, 0, 0), (1, 1, 0)]:
            assert hexagonal_classifier(lat, Plane(normal))[0] is False


class TestEnumerate:
    def test_cube(self):
        planes = enumerate_hexagonal_planes(Z3)
        axes = [p.axis for p in planes]
        assert len(axes) == 4
        for d in [(1, 1, -1), (1, -1, -1), (1, -1, 1), (1, 1, 1)]:
            assert sum(parallel(a, d) for a in axes) == 1

    @pytest.mark.parametrize("name", ["bcc", "fcc"])
    def test_centred_cubes(self, name):
        assert len(enumerate_hexagonal_planes(preset_lattice(name))) == 4

    @pytest.mark.parametrize("name", ["hexagonal", "rhombohedral"])
    def test_single_horizontal_plane(self, name):
        planes = enumerate_hexagonal_planes(preset_lattice(name, **BRAVAIS[name]))
        assert len(planes) == 1 and parallel(planes[0].axis, (0, 0, 1))

    @pytest.mark.parametrize("name", ["triclinic", "tetragonal", "orthorhombic"])
    def test_none(self, name):
        assert enumerate_hexagonal_planes(preset_lattice(name)) == []


class TestIffConsistency:
    @pytest.mark.parametrize("name", list(BRAVAIS))
    @pytest.mark.parametrize("y0", ["r6/12", "1/3", "11/100"])
    def test_classifier_matches_projection(self, name, y0):
        lat = preset_lattice(name, **BRAVAIS[name])
        group = SpaceGroup.holohedral(lat)
        planes = [p.plane for p in enumerate_hexagonal_planes(lat)] + [Plane((0, 0, 1)), Plane((1, 0, 0))]
        for plane in planes:
            verdict, _ = hexagonal_classifier(lat, plane)
            report = analyze_projection(group, S(y0), plane)
            assert verdict == report.hexagonal
            if report.hexagonal:
                assert report.witnesses is not None


class TestLiftDescendRoundTrip:
    @pytest.mark.parametrize("name", ["cubic-p1", "hexagonal", "rhombohedral", "bcc-p1"])
    @pytest.mark.parametrize("y0", ["r6/12", "r6/6", "r6/3", "r6/2", "1/3", "1", "2"])
    def test_every_projected_element_lifts(self, name, y0):
        group = SpaceGroup.holohedral(preset_lattice(name))
        pl = projected_lattice(group, S(y0))
        if pl.degenerate:
            pytest.skip("projection has rank below two")
        for q in projected_group(group, S(y0)).point_group:
            assert lift_check(q, group.lattice) != "neither"


def test_report_fields(cubic_p1):
    rep = analyze_projection(cubic_p1, S("r6/2"))
    assert rep.hexagonal and rep.rationally_compatible == 3
    assert rep.projected_group.order == 12
    assert len(rep.condition_trace) == 2
    group = projected_group(cubic_p1, S("r6/3"))
    for g in (iso(("1/2", "r3/6"), ROT60), iso((0, 0), MIRROR_X)):
        assert any(q == g.linear for q in group.point_group)
    assert all(tag in ("I", "II", "III") for tag in rep.condition_trace)
