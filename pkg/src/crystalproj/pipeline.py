"""End-to-end evaluation of a scene: group, projected group, pattern,
band projection and raster."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .exceptions import DegenerateProjectionError
from .groups import SpaceGroup, projected_group, projected_lattice
from .io import group_from_json
from .lattice import Lattice
from .patterns import InvariantPattern, ProjectedPattern, band_project, locate_shell, synthesize_shell
from .presets import Scene
from .render import RasterImage, render
from .scalar import AlgebraicScalar

__all__ = ["SceneResult", "run_scene"]


@dataclass
class SceneResult:
    scene: Scene
    lattice: Lattice
    group: SpaceGroup
    projected_group: SpaceGroup | None
    shell_r2: AlgebraicScalar
    pattern: InvariantPattern
    projected: ProjectedPattern
    image: RasterImage | None
    metadata: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)


def run_scene(scene: Scene, with_image: bool = True) -> SceneResult:
    timings = {}
    t = time.perf_counter()
    lattice = scene.lattice()
    group = group_from_json(lattice, scene.group)
    timings["group"] = time.perf_counter() - t

    t = time.perf_counter()
    y0 = scene.depth
    try:
        planar = projected_group(group, y0)
    except DegenerateProjectionError:
        planar = None
    timings["project_group"] = time.perf_counter() - t

    t = time.perf_counter()
    if scene.shell_r2 is not None:
        r2 = AlgebraicScalar.coerce(scene.shell_r2)
        how = "given radius"
    else:
        r2 = locate_shell(lattice, scene.shell_dim)
        how = f"first dual shell with {scene.shell_dim} vectors"
    pattern = synthesize_shell(lattice, r2)
    projected = band_project(pattern, y0, planar.lattice if planar else None)
    timings["synthesize"] = time.perf_counter() - t

    image = None
    if with_image:
        t = time.perf_counter()
        image = render(projected, scene.center, scene.width, scene.height, scene.resolution, scene.levels)
        timings["render"] = time.perf_counter() - t

    metadata = {
        "shell_r2": str(r2),
        "shell_rule": how,
        "shell_size": len(pattern),
        "projected_terms": len(projected),
        "identically_zero": len(projected) == 0,
        "window": {"center": list(scene.center), "width": scene.width, "height": scene.height},
        "window_rule": "fixed 2 x 2 unit window and grayscale levels; no window is prescribed for the reference panels",
        "projected_lattice_rank": projected_lattice(group, y0).rank,
    }
    return SceneResult(scene, lattice, group, planar, r2, pattern, projected, image, metadata, timings)
