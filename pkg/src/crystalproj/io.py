"""JSON encodings of lattices, groups, patterns, scenes and reports.

Scalars travel as text (``"1/2 + 1/6*r3"``) so round trips are exact.
"""

from __future__ import annotations

import json
from pathlib import Path

from .groups import Isometry, SpaceGroup
from .lattice import Lattice, PointIsometry
from .patterns import InvariantPattern, ProjectedPattern
from .presets import Scene, preset_lattice
from .scalar import parse_scalar

__all__ = [
    "scalar_text",
    "vector_text",
    "lattice_to_json",
    "lattice_from_json",
    "group_to_json",
    "group_from_json",
    "isometry_to_json",
    "pattern_to_json",
    "pattern_from_json",
    "projected_to_json",
    "scene_from_json",
    "scene_to_json",
    "load_scene",
    "dump_json",
]


def scalar_text(x) -> str:
    return str(x)


def vector_text(v) -> list[str]:
    return [str(x) for x in v]


def lattice_to_json(lattice: Lattice) -> dict:
    return {"basis": [vector_text(v) for v in lattice.basis]}


def lattice_from_json(block: dict) -> Lattice:
    if "preset" in block:
        return preset_lattice(block["preset"], **block.get("params", {}))
    if "basis" in block:
        return Lattice([[parse_scalar(str(x)) for x in v] for v in block["basis"]])
    raise ValueError("lattice block needs 'preset' or 'basis'")


def isometry_to_json(g: Isometry, lattice: Lattice) -> dict:
    point = PointIsometry.from_cartesian(lattice, g.linear)
    return {
        "translation": vector_text(g.translation),
        "matrix": [list(row) for row in point.m],
        "cartesian": [vector_text(row) for row in g.linear],
    }


def group_to_json(group: SpaceGroup) -> dict:
    return {
        "lattice": lattice_to_json(group.lattice),
        "order": group.order,
        "reps": [isometry_to_json(g, group.lattice) for g in group.reps],
    }


def group_from_json(lattice: Lattice, spec) -> SpaceGroup:
    """``"holohedral"``, ``"translations"`` or ``{"reps": [...]}`` with integer
    matrices in lattice coordinates."""
    if spec in (None, "holohedral"):
        return SpaceGroup.holohedral(lattice)
    if spec == "translations":
        return SpaceGroup.translations(lattice)
    if isinstance(spec, dict) and "reps" in spec:
        reps = []
        for rep in spec["reps"]:
            m = PointIsometry(lattice, rep["matrix"])
            if not m.is_orthogonal():
                raise ValueError("group matrix does not preserve the lattice metric")
            reps.append(Isometry([parse_scalar(str(x)) for x in rep["translation"]], m.cartesian))
        return SpaceGroup(lattice, reps)
    raise ValueError("group must be 'holohedral', 'translations' or an object with 'reps'")


def pattern_to_json(pattern: InvariantPattern) -> dict:
    return {
        "lattice": lattice_to_json(pattern.lattice),
        "terms": [{"k": list(k), "re": z.real, "im": z.imag} for k, z in sorted(pattern.terms.items())],
    }


def pattern_from_json(block: dict) -> InvariantPattern:
    lattice = lattice_from_json(block["lattice"])
    return InvariantPattern(lattice, {tuple(t["k"]): complex(t["re"], t["im"]) for t in block["terms"]})


def projected_to_json(pattern: ProjectedPattern) -> dict:
    terms = sorted(pattern.terms.items(), key=lambda kv: tuple(float(x) for x in kv[0]))
    return {
        "y0": pattern.y0,
        "planar_lattice": lattice_to_json(pattern.planar_lattice) if pattern.planar_lattice else None,
        "terms": [{"k": vector_text(k), "re": z.real, "im": z.imag} for k, z in terms],
    }


def scene_from_json(block: dict, fallback_id: str = "scene") -> Scene:
    lat = block.get("lattice", {})
    shell = block.get("shell", {})
    window = block.get("window", {})
    kwargs = dict(
        id=str(block.get("id", fallback_id)),
        group=block.get("group", "holohedral"),
        y0=str(block.get("y0", "1")),
        shell_r2=str(shell["r2"]) if "r2" in shell else None,
        shell_dim=int(shell["dim"]) if "dim" in shell else None,
        center=tuple(float(c) for c in window.get("center", (0.0, 0.0))),
        width=float(window.get("width", 2.0)),
        height=float(window.get("height", 2.0)),
        resolution=int(block.get("resolution", 512)),
        levels=int(block.get("levels", 8)),
    )
    if "preset" in lat:
        return Scene(preset=lat["preset"], params=dict(lat.get("params", {})), **kwargs)
    if "basis" in lat:
        return Scene(basis=[[str(x) for x in v] for v in lat["basis"]], **kwargs)
    raise ValueError("scene lattice needs 'preset' or 'basis'")


def scene_to_json(scene: Scene) -> dict:
    lat = {"preset": scene.preset, "params": scene.params} if scene.preset else {"basis": scene.basis}
    shell = {"r2": scene.shell_r2} if scene.shell_r2 is not None else {"dim": scene.shell_dim}
    return {
        "id": scene.id,
        "lattice": lat,
        "group": scene.group,
        "y0": scene.y0,
        "shell": shell,
        "window": {"center": list(scene.center), "width": scene.width, "height": scene.height},
        "resolution": scene.resolution,
        "levels": scene.levels,
    }


def load_scene(path) -> Scene:
    path = Path(path)
    try:
        block = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from None
    return scene_from_json(block, fallback_id=path.stem)


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
