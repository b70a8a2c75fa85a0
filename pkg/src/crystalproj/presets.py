"""Named lattices and the figure scenes.

Two frames are provided.  The *standard* presets use textbook bases.  The
``-p1`` presets are rotated so that the projection plane ``z = x + y`` of the
cubic family becomes the horizontal plane, with the conventional cube edge
scaled to ``1/sqrt2`` so the in-plane hexagonal sublattice has unit spacing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .lattice import Lattice
from .scalar import AlgebraicScalar, parse_scalar

__all__ = [
    "CUBIC_P1_ROTATION",
    "PRESET_NAMES",
    "Scene",
    "preset_lattice",
    "figure_presets",
    "figure_scene",
]

# rows: in-plane (0,1,1)/sqrt2, completion (2,-1,1)/sqrt6, normal (1,1,-1)/sqrt3
CUBIC_P1_ROTATION = la.mat(
    [
        ("0", "r2/2", "r2/2"),
        ("r6/3", "-r6/6", "r6/6"),
        ("r3/3", "r3/3", "-r3/3"),
    ]
)


def _cubic():
    return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def _bcc():
    return [("-1/2", "1/2", "1/2"), ("1/2", "-1/2", "1/2"), ("1/2", "1/2", "-1/2")]


def _fcc():
    return [(0, "1/2", "1/2"), ("1/2", 0, "1/2"), ("1/2", "1/2", 0)]


def _hexagonal(c="2"):
    return [(1, 0, 0), ("1/2", "r3/2", 0), (0, 0, c)]


def _rhombohedral(a="2"):
    a = AlgebraicScalar.coerce(a)
    return [(1, 0, 0), ("1/2", "r3/2", 0), ("-1/2", "r3/6", a / 3)]


def _in_p1_frame(basis):
    scale = parse_scalar("r2/2")
    return [la.scale(scale, la.matvec(CUBIC_P1_ROTATION, la.vec(v))) for v in basis]


_BUILDERS = {
    "cubic": lambda p: _cubic(),
    "bcc": lambda p: _bcc(),
    "fcc": lambda p: _fcc(),
    "hexagonal": lambda p: _hexagonal(p.get("c", "2")),
    "rhombohedral": lambda p: _rhombohedral(p.get("a", "2")),
    "tetragonal": lambda p: [(1, 0, 0), (0, 1, 0), (0, 0, p.get("c", "2"))],
    "orthorhombic": lambda p: [(1, 0, 0), (0, "3/2", 0), (0, 0, 2)],
    "triclinic": lambda p: [(1, 0, 0), ("1/6", 1, 0), ("1/7", "1/5", 1)],
    # same lattice as the rotated cube, written in its in-plane hexagonal basis
    "cubic-p1": lambda p: [(1, 0, 0), ("1/2", "r3/2", 0), ("1/2", "r3/6", "-r6/6")],
    "bcc-p1": lambda p: _in_p1_frame(_bcc()),
    "fcc-p1": lambda p: _in_p1_frame(_fcc()),
}

PRESET_NAMES = tuple(_BUILDERS)


def preset_lattice(name: str, **params) -> Lattice:
    """Build a preset lattice; ``hexagonal``/``tetragonal`` take ``c`` and
    ``rhombohedral`` takes ``a``."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
    return Lattice(builder(params))


@dataclass
class Scene:
    """Everything needed to reproduce one rendered panel."""

    id: str
    preset: str | None = None
    basis: list | None = None
    params: dict = field(default_factory=dict)
    group: object = "holohedral"
    y0: str = "1"
    shell_r2: str | None = None
    shell_dim: int | None = None
    center: tuple = (0.0, 0.0)
    width: float = 2.0
    height: float = 2.0
    resolution: int = 512
    levels: int = 8

    def __post_init__(self):
        if self.resolution < 16:
            raise ValueError("resolution must be at least 16")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("window width and height must be positive")
        if self.levels < 2:
            raise ValueError("level count must be at least 2")
        if (self.preset is None) == (self.basis is None):
            raise ValueError("give exactly one of preset or basis")
        if self.shell_r2 is None and self.shell_dim is None:
            raise ValueError("give a shell radius or a representation dimension")
        parse_scalar(self.y0)

    @property
    def depth(self) -> AlgebraicScalar:
        return parse_scalar(self.y0)

    def lattice(self) -> Lattice:
        if self.preset is not None:
            return preset_lattice(self.preset, **self.params)
        return Lattice(self.basis)


_FIGURES = [
    ("1a", "cubic-p1", "r6/12"),
    ("1b", "cubic-p1", "r6/6"),
    ("1c", "cubic-p1", "r6/3"),
    ("1d", "cubic-p1", "r6/2"),
    ("2a", "bcc-p1", "r6/12"),
    ("2b", "bcc-p1", "r6/6"),
    ("2c", "bcc-p1", "r6/4"),
    ("2d", "bcc-p1", "r6/3"),
    ("3a", "rhombohedral", "1/3"),
    ("3b", "rhombohedral", "2/3"),
    ("3c", "rhombohedral", "4/3"),
    ("3d", "rhombohedral", "2"),
    ("4a", "hexagonal", "1"),
    ("4b", "hexagonal", "2"),
]

# representation dimension used for each reference panel
_SHELL_DIM = {"bcc-p1": 12, "rhombohedral": 6, "hexagonal": 12}


def figure_presets(resolution: int = 512) -> list[Scene]:
    scenes = []
    for fid, preset, depth in _FIGURES:
        params = {"a": "2"} if preset == "rhombohedral" else {"c": "2"} if preset == "hexagonal" else {}
        if preset == "cubic-p1":
            shell = {"shell_r2": "2"}
        else:
            shell = {"shell_dim": _SHELL_DIM[preset]}
        scenes.append(Scene(id=fid, preset=preset, params=params, y0=depth, resolution=resolution, **shell))
    return scenes


def figure_scene(fid: str, resolution: int = 512) -> Scene:
    for scene in figure_presets(resolution):
        if scene.id == fid:
            return scene
    raise ValueError(f"unknown figure id {fid!r}")
