"""Rasterisation of planar patterns, filled-contour quantisation, PGM/PNG
output and rotation checks on lattice-aligned sample grids."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.ndimage import map_coordinates

from . import linalg as la
from .lattice import Lattice

__all__ = [
    "RasterImage",
    "quantize",
    "render",
    "write_pgm",
    "read_pgm",
    "write_png",
    "lattice_grid",
    "rotation_deviation",
    "rotation_centers",
    "FLAT_TOL",
]

# sample ranges below this (relative to the largest magnitude) count as flat
FLAT_TOL = 1e-12


def quantize(samples: np.ndarray, levels: int) -> np.ndarray:
    """Uniform level bins between the sample minimum and maximum, mapped to
    evenly spaced 8-bit gray values."""
    if levels < 2:
        raise ValueError("need at least two levels")
    lo, hi = float(samples.min()), float(samples.max())
    scale = max(abs(lo), abs(hi), 1.0)
    if hi - lo <= FLAT_TOL * scale:
        return np.zeros(samples.shape, dtype=np.uint8)
    idx = np.floor((samples - lo) / (hi - lo) * levels).astype(int)
    idx = np.clip(idx, 0, levels - 1)
    return np.round(idx * (255 / (levels - 1))).astype(np.uint8)


@dataclass
class RasterImage:
    samples: np.ndarray
    levels: int

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def quantized(self) -> np.ndarray:
        return quantize(self.samples, self.levels)


def window_points(center, width: float, height: float, resolution: int) -> np.ndarray:
    """Pixel-centre coordinates, row 0 at the top of the window."""
    cx, cy = (float(c) for c in center)
    xs = cx - width / 2 + (np.arange(resolution) + 0.5) * (width / resolution)
    ys = cy + height / 2 - (np.arange(resolution) + 0.5) * (height / resolution)
    gx, gy = np.meshgrid(xs, ys)
    return np.stack([gx, gy], axis=-1)


def render(pattern, center=(0.0, 0.0), width: float = 2.0, height: float = 2.0, resolution: int = 512, levels: int = 8) -> RasterImage:
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    if width <= 0 or height <= 0:
        raise ValueError("window must have positive size")
    pts = window_points(center, width, height, resolution)
    return RasterImage(np.asarray(pattern.eval(pts), dtype=float), levels)


def write_pgm(image: RasterImage, path) -> Path:
    path = Path(path)
    data = image.quantized
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    path.write_bytes(header + data.tobytes())
    return path


def read_pgm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    parts = raw.split(maxsplit=4)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM file")
    width, height, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    if maxval != 255:
        raise ValueError("only 8-bit PGM is supported")
    return np.frombuffer(parts[4][: width * height], dtype=np.uint8).reshape(height, width)


def write_png(image: RasterImage, path) -> Path | None:
    """PNG copy via Pillow; returns None when Pillow is unavailable."""
    try:
        from PIL import Image
    except ImportError:  # pragma: no cover
        return None
    path = Path(path)
    Image.fromarray(image.quantized, mode="L").save(path)
    return path


# lattice-aligned grids ---------------------------------------------------


def lattice_grid(pattern, lattice: Lattice, cells: int = 2, resolution: int = 512) -> np.ndarray:
    """Samples at ``(i l1 + j l2) * cells / resolution`` for ``0 <= i, j < resolution``.

    Rotations that preserve ``lattice`` and are centred on a grid node move
    nodes onto nodes, so resampling introduces no interpolation error there.
    """
    if resolution % cells:
        raise ValueError("resolution must be a multiple of the cell count")
    t = np.arange(resolution) * (cells / resolution)
    ci, cj = np.meshgrid(t, t, indexing="ij")
    coords = np.stack([ci, cj], axis=-1)
    return np.asarray(pattern.eval(coords @ lattice.float_basis), dtype=float)


def rotation_deviation(grid: np.ndarray, lattice: Lattice, linear, center=(0.0, 0.0), cells: int = 2) -> float:
    """Largest ``|f(c + R (x - c)) - f(x)|`` over the grid nodes ``x``, with
    the rotated values obtained by periodic bilinear resampling."""
    n = grid.shape[0]
    basis = lattice.float_basis
    inv = np.linalg.inv(basis)
    r = linear if isinstance(linear, np.ndarray) else la.to_float_matrix(la.mat(linear))
    c = np.asarray(center, dtype=float)
    t = np.arange(n) * (cells / n)
    ci, cj = np.meshgrid(t, t, indexing="ij")
    pts = np.stack([ci, cj], axis=-1) @ basis
    moved = (pts - c) @ r.T + c
    idx = (moved @ inv) * (n / cells)
    # snap indices that are integers up to roundoff
    near = np.round(idx)
    idx = np.where(np.abs(idx - near) < 1e-9, near, idx)
    resampled = map_coordinates(grid, [idx[..., 0], idx[..., 1]], order=1, mode="grid-wrap")
    return float(np.max(np.abs(resampled - grid)))


def rotation_centers(lattice: Lattice) -> list[np.ndarray]:
    """Candidate rotation centres of a plane lattice: a node, the two
    3-fold points and the three 2-fold points of the unit cell."""
    frac = [(0, 0), (1 / 3, 1 / 3), (2 / 3, 2 / 3), (1 / 2, 0), (0, 1 / 2), (1 / 2, 1 / 2)]
    return [np.array(f) @ lattice.float_basis for f in frac]
