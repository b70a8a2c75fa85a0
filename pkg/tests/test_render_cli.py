import json

import numpy as np
import pytest

from conftest import MINUS_ROT60, ROT60, ROT120
from crystalproj import cli
from crystalproj.groups import projected_group
from crystalproj.io import (
    group_from_json,
    group_to_json,
    lattice_from_json,
    lattice_to_json,
    pattern_from_json,
    pattern_to_json,
    scene_from_json,
    scene_to_json,
)
from crystalproj.lattice import Lattice
from crystalproj.patterns import InvariantPattern, band_project, synthesize_shell
from crystalproj.pipeline import run_scene
from crystalproj.presets import Scene, figure_presets, figure_scene, preset_lattice
from crystalproj.render import (
    RasterImage,
    lattice_grid,
    quantize,
    read_pgm,
    render,
    rotation_centers,
    rotation_deviation,
    write_pgm,
)
from crystalproj.scalar import S

P1 = preset_lattice("cubic-p1")


def run(capsys, *argv):
    code = cli.run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestQuantize:
    def test_constant_pattern_is_uniform(self):
        img = render(_planar_constant(), resolution=32)
        q = img.quantized
        assert q.shape == (32, 32) and len(np.unique(q)) == 1

    def test_levels(self):
        q = quantize(np.linspace(0, 1, 100).reshape(10, 10), 4)
        assert set(np.unique(q)) == {0, 85, 170, 255}

    def test_rejects_single_level(self):
        with pytest.raises(ValueError):
            quantize(np.zeros((2, 2)), 1)


def _planar_constant():
    return band_project(InvariantPattern.constant(P1), S("1/2"))


class TestRender:
    def test_samples_match_eval(self, cubic_p1):
        p = band_project(synthesize_shell(P1, 2), S("r6/12"))
        img = render(p, center=(0.1, -0.2), width=2, height=1, resolution=16)
        assert img.samples.shape == (16, 16)
        x = -0.9 + 2 / 32
        y = -0.2 + 0.5 - 1 / 32
        assert img.samples[0, 0] == pytest.approx(p.eval(np.array([x, y])))

    @pytest.mark.parametrize("kwargs", [{"resolution": 8}, {"width": 0}, {"height": -1}])
    def test_invalid_window(self, kwargs):
        with pytest.raises(ValueError):
            render(_planar_constant(), **kwargs)

    def test_pgm_round_trip(self, tmp_path):
        img = RasterImage(np.arange(256.0).reshape(16, 16), 8)
        path = write_pgm(img, tmp_path / "a.pgm")
        assert path.read_bytes().startswith(b"P5\n16 16\n255\n")
        assert np.array_equal(read_pgm(path), img.quantized)


@pytest.fixture(scope="module")
def generic(cubic_p1):
    y0 = S("r6/12")
    planar = projected_group(cubic_p1, y0).lattice
    p = band_project(synthesize_shell(P1, 2), y0, planar)
    return lattice_grid(p, planar, resolution=256), planar


class TestRotationCheck:
    def test_generic_depth_three_fold(self, generic):
        grid, planar = generic
        assert rotation_deviation(grid, planar, ROT120) <= 1e-6
        assert rotation_deviation(grid, planar, MINUS_ROT60) <= 1e-6

    def test_generic_depth_no_six_fold(self, generic):
        grid, planar = generic
        devs = [rotation_deviation(grid, planar, ROT60, c) for c in rotation_centers(planar)]
        assert min(devs) >= 1e-3


class TestIO:
    def test_lattice_round_trip(self):
        assert lattice_from_json(json.loads(json.dumps(lattice_to_json(P1)))) == P1

    def test_group_round_trip(self, cubic_p1):
        block = json.loads(json.dumps(group_to_json(cubic_p1)))
        group = group_from_json(P1, {"reps": block["reps"]})
        assert group.order == 48

    def test_pattern_round_trip(self):
        p = synthesize_shell(P1, 2)
        assert pattern_from_json(json.loads(json.dumps(pattern_to_json(p)))).terms == p.terms

    def test_scene_round_trip(self):
        s = figure_scene("3a")
        assert scene_from_json(scene_to_json(s)) == s

    def test_bad_group_matrix(self):
        with pytest.raises(ValueError):
            group_from_json(P1, {"reps": [{"translation": [0, 0, 0], "matrix": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]}]})


class TestPresets:
    def test_fourteen_scenes(self):
        scenes = figure_presets()
        assert len(scenes) == 14 and len({s.id for s in scenes}) == 14

    def test_depths(self):
        assert figure_scene("1a").depth == S("1/(2*r6)")
        assert figure_scene("1d").depth == S("3/r6")
        assert figure_scene("2c").depth == S("3/(2*r6)")
        assert figure_scene("3a").depth == S("2/6") and figure_scene("3a").params == {"a": "2"}
        assert figure_scene("4a").depth == 1 and figure_scene("4b").params == {"c": "2"}

    @pytest.mark.parametrize("kwargs", [{"resolution": 15}, {"levels": 1}, {"width": 0}])
    def test_scene_validation(self, kwargs):
        with pytest.raises(ValueError):
            Scene(id="x", preset="cubic", shell_r2="1", **kwargs)

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            preset_lattice("monoclinic")

    def test_pipeline_metadata(self):
        r = run_scene(figure_scene("2a", 32))
        assert r.metadata["shell_size"] == 12
        assert "first dual shell" in r.metadata["shell_rule"]
        assert r.image.samples.shape == (32, 32)


class TestCLI:
    def test_holohedry(self, capsys):
        code, out, _ = run(capsys, "holohedry", "--preset", "cubic")
        report = json.loads(out)
        assert code == 0 and report["result"]["order"] == 48
        assert set(report) == {"query", "inputs_echo", "result", "witnesses", "timings"}

    def test_planes(self, capsys):
        code, out, _ = run(capsys, "planes", "--preset", "cubic")
        assert code == 0 and json.loads(out)["result"]["count"] == 4

    def test_classify(self, capsys):
        _, out, _ = run(capsys, "classify", "--preset", "cubic", "--plane", "1,1,-1")
        assert json.loads(out)["result"]["hexagonal"] is True
        _, out, _ = run(capsys, "classify", "--preset", "orthorhombic")
        assert json.loads(out)["result"]["hexagonal"] is False

    def test_project_group(self, capsys):
        code, out, _ = run(capsys, "project-group", "--preset", "cubic-p1", "--y0", "1/(2*r6)")
        result = json.loads(out)["result"]
        assert code == 0 and result["projected_group"]["order"] == 6

    def test_synthesize(self, capsys):
        code, out, _ = run(capsys, "synthesize", "--preset", "fcc-p1", "--shell-dim", "8", "--y0", "r6/12")
        assert code == 0 and len(json.loads(out)["result"]["wave_vectors"]) == 8

    def test_figure_files_and_determinism(self, capsys, tmp_path):
        code, _, _ = run(capsys, "figure", "--id", "1b", "--resolution", "64", "--out", str(tmp_path / "a"))
        run(capsys, "figure", "--id", "1b", "--resolution", "64", "--out", str(tmp_path / "b"))
        a = (tmp_path / "a" / "1b_64.pgm").read_bytes()
        assert code == 0 and a == (tmp_path / "b" / "1b_64.pgm").read_bytes()
        assert (tmp_path / "a" / "1b_64.png").exists()

    def test_render_scene_file(self, capsys, tmp_path):
        scene = {
            "id": "custom",
            "lattice": {"basis": [[1, 0, 0], ["1/2", "r3/2", 0], [0, 0, 2]]},
            "group": "holohedral",
            "y0": "1/3",
            "shell": {"dim": 12},
            "window": {"center": [0, 0], "width": 3, "height": 3},
            "resolution": 32,
            "levels": 5,
        }
        path = tmp_path / "scene.json"
        path.write_text(json.dumps(scene))
        code, out, _ = run(capsys, "render", "--scene", str(path), "--out", str(tmp_path))
        assert code == 0 and (tmp_path / "custom_32.pgm").exists()
        assert len(np.unique(read_pgm(tmp_path / "custom_32.pgm"))) <= 5

    def test_verify(self, capsys):
        code, out, err = run(capsys, "verify", "--samples", "200")
        assert code == 0 and json.loads(out)["result"]["passed"]
        assert "PASS" in err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.run_command(["holohedry", "--bogus"])
        assert exc.value.code == 64
        with pytest.raises(SystemExit) as exc:
            cli.run_command(["teleport"])
        assert exc.value.code == 64

    def test_validation_error(self, capsys, tmp_path):
        assert run(capsys, "project-group", "--preset", "cubic", "--y0", "r5")[0] == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(capsys, "render", "--scene", str(bad))[0] == 2

    def test_computation_error(self, capsys):
        code, _, err = run(capsys, "synthesize", "--preset", "cubic-p1", "--shell-r2", "3", "--y0", "1")
        assert code == 3 and "EmptyShellError" in err

    def test_report_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        run(capsys, "--report", str(target), "holohedry", "--preset", "hexagonal")
        assert json.loads(target.read_text())["result"]["rotation_order"] == 12

    def test_verify_failure_exit_code(self, capsys, monkeypatch):
        from crystalproj.verification import Check

        monkeypatch.setattr(cli, "reference_checks", lambda **kw: [Check("forced", False, "x")])
        assert run(capsys, "verify")[0] == 1


def test_square_lattice_has_no_hexagonal_render():
    lat = Lattice([(1, 0), (0, 1)])
    p = synthesize_shell(lat, 1)
    grid = lattice_grid(p, lat, resolution=64)
    assert rotation_deviation(grid, lat, ((0, -1), (1, 0))) < 1e-9
    assert rotation_deviation(grid, lat, ROT60) > 1e-3
