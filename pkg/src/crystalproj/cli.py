"""``crystalproj`` command-line front end.

Every subcommand prints a JSON report ``{query, inputs_echo, result,
witnesses, timings}``; ``render`` and ``figure`` also write images.  Exit
status: 0 success, 1 failed verification, 2 invalid input, 3 computation
error, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .exceptions import CrystalProjError
from .groups import SpaceGroup
from .io import (
    dump_json,
    group_from_json,
    group_to_json,
    isometry_to_json,
    lattice_to_json,
    load_scene,
    projected_to_json,
    scene_to_json,
    vector_text,
)
from .lattice import Plane, holohedry
from .pipeline import run_scene
from .presets import PRESET_NAMES, Scene, figure_presets, figure_scene, preset_lattice
from .projection import analyze_projection, enumerate_hexagonal_planes, hexagonal_classifier
from .render import write_pgm, write_png
from .scalar import parse_scalar
from .verification import reference_checks

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_COMPUTATION, EXIT_USAGE = 0, 1, 2, 3, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"--param expects key=value, got {item!r}")
        out[key] = value
    return out


def _lattice(args):
    if args.scene:
        scene = load_scene(args.scene)
        return scene.lattice(), scene
    if not args.preset:
        raise ValueError("give --preset or --scene")
    return preset_lattice(args.preset, **_params(args.param)), None


def _group(args):
    lattice, scene = _lattice(args)
    if scene is not None and scene.group != "holohedral":
        return group_from_json(lattice, scene.group), scene
    return SpaceGroup.holohedral(lattice), scene


def _y0(args, scene):
    if args.y0 is not None:
        return parse_scalar(args.y0)
    if scene is not None:
        return scene.depth
    raise ValueError("give --y0")


def _plane(text):
    if text is None:
        return None
    return Plane(tuple(parse_scalar(x.strip()) for x in text.split(",")))


def _echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "handler" and v is not None}


def _point_json(g) -> dict:
    return {"matrix": [list(r) for r in g.m], "det": g.det}


# subcommands -------------------------------------------------------------


def cmd_holohedry(args):
    lattice, _ = _lattice(args)
    group = holohedry(lattice)
    rotations = [g for g in group if g.det == 1]
    result = {
        "lattice": lattice_to_json(lattice),
        "order": len(group),
        "rotation_order": len(rotations),
        "elements": [_point_json(g) for g in group],
    }
    return result, None


def cmd_classify(args):
    lattice, _ = _lattice(args)
    plane = _plane(args.plane)
    if plane is None:
        planes = enumerate_hexagonal_planes(lattice) if lattice.dim == 3 else []
        result = {"hexagonal": bool(planes), "planes": [vector_text(p.axis) for p in planes]}
        witnesses = [{"axis": vector_text(p.axis), "generators": [vector_text(v) for v in p.generators]} for p in planes]
        return result, witnesses
    verdict, witness = hexagonal_classifier(lattice, plane)
    result = {"hexagonal": verdict, "plane": vector_text(plane.normal)}
    if witness is None:
        return result, None
    return result, {
        "beta": _point_json(witness.beta),
        "generators": [vector_text(v) for v in witness.generators],
        "hypothesis_verified": witness.hypothesis_verified,
    }


def cmd_planes(args):
    lattice, _ = _lattice(args)
    planes = enumerate_hexagonal_planes(lattice)
    result = {
        "count": len(planes),
        "planes": [
            {
                "normal": vector_text(p.axis),
                "generators": [vector_text(v) for v in p.generators],
                "rotation": _point_json(p.beta),
            }
            for p in planes
        ],
    }
    return result, None


def cmd_project_group(args):
    group, scene = _group(args)
    y0 = _y0(args, scene)
    report = analyze_projection(group, y0, _plane(args.plane))
    pl = report.projected_lattice
    result = {
        "y0": str(y0),
        "projected_lattice": {"rank": pl.rank, "generators": [vector_text(v) for v in pl.generators], "full": pl.full},
        "condition_trace": report.condition_trace,
        "rationally_compatible": report.rationally_compatible,
        "hexagonal": report.hexagonal,
        "projected_group": group_to_json(report.projected_group) if report.projected_group else None,
    }
    witnesses = None
    if report.projected_group is not None:
        planar = report.projected_group
        witnesses = [isometry_to_json(g, planar.lattice) for g in planar.generators()]
    return result, witnesses


def _scene_from_args(args) -> Scene:
    if args.scene:
        scene = load_scene(args.scene)
    else:
        if not args.preset:
            raise ValueError("give --preset or --scene")
        if args.shell_r2 is None and args.shell_dim is None:
            raise ValueError("give --shell-r2 or --shell-dim")
        scene = Scene(
            id=args.preset,
            preset=args.preset,
            params=_params(args.param),
            y0=args.y0 or "1",
            shell_r2=args.shell_r2,
            shell_dim=args.shell_dim,
        )
    overrides = {}
    if args.y0 is not None:
        overrides["y0"] = args.y0
    if args.resolution is not None:
        overrides["resolution"] = args.resolution
    if args.levels is not None:
        overrides["levels"] = args.levels
    if args.shell_r2 is not None:
        overrides.update(shell_r2=args.shell_r2, shell_dim=None)
    elif args.shell_dim is not None:
        overrides.update(shell_dim=args.shell_dim, shell_r2=None)
    if overrides:
        scene = Scene(**{**vars(scene), **overrides})
    return scene


def cmd_synthesize(args):
    result = run_scene(_scene_from_args(args), with_image=False)
    body = {
        "scene": scene_to_json(result.scene),
        "shell_r2": str(result.shell_r2),
        "wave_vectors": [vector_text(k) for k in result.pattern.wave_vectors()],
        "projected": projected_to_json(result.projected),
        "metadata": result.metadata,
    }
    return body, None, result.timings


def _write_images(result, out: Path, stem: str) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    pgm = write_pgm(result.image, out / f"{stem}.pgm")
    png = write_png(result.image, out / f"{stem}.png")
    return {"pgm": str(pgm), "png": str(png) if png else None}


def _render_result(result, out: Path) -> dict:
    files = _write_images(result, out, f"{result.scene.id}_{result.scene.resolution}")
    return {"scene": scene_to_json(result.scene), "files": files, "metadata": result.metadata}


def cmd_render(args):
    result = run_scene(_scene_from_args(args))
    return _render_result(result, Path(args.out)), None, result.timings


def cmd_figure(args):
    resolution = args.resolution or 512
    if args.all:
        scenes = figure_presets(resolution)
    elif args.id:
        scenes = [figure_scene(args.id, resolution)]
    else:
        raise ValueError("give --id or --all")
    out = Path(args.out)
    rendered, timings = [], {}
    for scene in scenes:
        if args.levels is not None:
            scene = Scene(**{**vars(scene), "levels": args.levels})
        result = run_scene(scene)
        rendered.append(_render_result(result, out))
        timings[scene.id] = result.timings
    return {"figures": rendered}, None, timings


def cmd_verify(args):
    checks = reference_checks(n_samples=args.samples, seed=args.seed)
    for c in checks:
        print(c.line(), file=sys.stderr)
    result = {
        "passed": all(c.passed for c in checks),
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
    }
    return result, None


# parser ------------------------------------------------------------------


def _add_source(p, scene=True):
    p.add_argument("--preset", choices=PRESET_NAMES)
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="preset parameter such as a=2 or c=2")
    if scene:
        p.add_argument("--scene", metavar="FILE.json")


def _add_render_opts(p):
    p.add_argument("--y0", metavar="EXPR")
    p.add_argument("--shell-r2", metavar="EXPR")
    p.add_argument("--shell-dim", type=int, metavar="N")
    p.add_argument("--resolution", type=int)
    p.add_argument("--levels", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crystalproj", description="Symmetries of band projections of lattice-periodic patterns.")
    parser.add_argument("--report", metavar="FILE", help="also write the JSON report to FILE")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("holohedry", help="point symmetries of a lattice")
    _add_source(p)
    p.set_defaults(handler=cmd_holohedry)

    p = sub.add_parser("classify", help="does the lattice project to a hexagonal one")
    _add_source(p)
    p.add_argument("--plane", metavar="N1,N2,N3", help="plane normal; default searches all 3-fold axes")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("planes", help="planes with hexagonal projections")
    _add_source(p)
    p.set_defaults(handler=cmd_planes)

    p = sub.add_parser("project-group", help="symmetry group of projections at depth y0")
    _add_source(p)
    p.add_argument("--y0", metavar="EXPR")
    p.add_argument("--plane", metavar="N1,N2,N3")
    p.set_defaults(handler=cmd_project_group)

    p = sub.add_parser("synthesize", help="shell pattern and its band projection")
    _add_source(p)
    _add_render_opts(p)
    p.set_defaults(handler=cmd_synthesize)

    p = sub.add_parser("render", help="contour image of a projected pattern")
    _add_source(p)
    _add_render_opts(p)
    p.add_argument("--out", default=".", metavar="DIR")
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("verify", help="recheck the cubic projection reference table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("figure", help="render the reference figure panels")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--id", metavar="ID", help="panel id such as 1d")
    group.add_argument("--all", action="store_true")
    p.add_argument("--resolution", type=int)
    p.add_argument("--levels", type=int)
    p.add_argument("--out", default=".", metavar="DIR")
    p.set_defaults(handler=cmd_figure)
    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        outcome = args.handler(args)
    except CrystalProjError as exc:
        print(f"crystalproj: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except (ValueError, OSError) as exc:
        print(f"crystalproj: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    result, witnesses, *extra = outcome
    timings = extra[0] if extra else {}
    timings = {**timings, "total": time.perf_counter() - start}
    report = {
        "query": args.command,
        "inputs_echo": _echo(args),
        "result": result,
        "witnesses": witnesses,
        "timings": timings,
    }
    print(dump_json(report, args.report))
    if args.command == "verify" and not result["passed"]:
        return EXIT_FAILED
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
