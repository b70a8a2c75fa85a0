"""Lattice-periodic functions as finite Fourier sums and their band
projections.

Wave vectors stay exact; coefficients are complex floats.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .exceptions import EmptyShellError
from .groups import Isometry, SpaceGroup
from .lattice import Lattice, PointIsometry, norm_shells, shell
from .scalar import AlgebraicScalar

__all__ = [
    "InvariantPattern",
    "ProjectedPattern",
    "synthesize_shell",
    "locate_shell",
    "symmetrize",
    "band_factor",
    "band_project",
    "verify_invariance",
    "sample_cell",
    "IMAG_TOL",
]

IMAG_TOL = 1e-12
CANCEL_TOL = 1e-13
TWO_PI = 2 * math.pi


def _evaluate(kvecs: np.ndarray, coefs: np.ndarray, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.shape[-1] != kvecs.shape[1]:
        raise ValueError(f"points must have {kvecs.shape[1]} coordinates")
    flat = pts.reshape(-1, kvecs.shape[1])
    out = np.empty(len(flat), dtype=complex)
    # chunked so large rasters stay within memory
    step = max(1, 2**20 // max(1, len(coefs)))
    for start in range(0, len(flat), step):
        phase = flat[start : start + step] @ kvecs.T
        out[start : start + step] = np.exp(1j * TWO_PI * phase) @ coefs
    scale = float(np.abs(coefs).sum()) or 1.0
    residue = float(np.abs(out.imag).max()) if len(out) else 0.0
    if residue > IMAG_TOL * scale:
        raise ValueError(f"imaginary residue {residue:.3g} exceeds tolerance; coefficients are not Hermitian")
    return out.real.reshape(pts.shape[:-1])


@dataclass
class InvariantPattern:
    """``f(x) = sum_k z_k exp(2 pi i <k, x>)`` over dual-lattice vectors ``k``.

    ``terms`` maps integer coordinates with respect to ``lattice.dual`` to
    complex coefficients.
    """

    lattice: Lattice
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(int(c) for c in k): complex(z) for k, z in self.terms.items()}

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def wave_vector(self, k) -> tuple:
        return self.lattice.dual.point(k)

    def wave_vectors(self) -> list[tuple]:
        return [self.wave_vector(k) for k in self.terms]

    def _arrays(self):
        keys = list(self.terms)
        if not keys:
            return np.zeros((0, self.dim)), np.zeros(0, dtype=complex)
        kv = np.array(keys, dtype=float) @ self.lattice.dual.float_basis
        return kv, np.array([self.terms[k] for k in keys], dtype=complex)

    def eval(self, points) -> np.ndarray | float:
        kv, coefs = self._arrays()
        out = _evaluate(kv, coefs, points)
        return float(out) if np.ndim(out) == 0 else out

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        for k, z in self.terms.items():
            other = self.terms.get(tuple(-c for c in k))
            if other is None or abs(other - z.conjugate()) > tol * max(1.0, abs(z)):
                return False
        return True

    def __len__(self):
        return len(self.terms)

    @classmethod
    def constant(cls, lattice: Lattice, value: complex = 1.0) -> InvariantPattern:
        return cls(lattice, {(0,) * lattice.dim: value})


@dataclass
class ProjectedPattern:
    """Band projection of a pattern: one dimension down, keyed by exact
    horizontal wave vectors."""

    terms: dict
    dim: int
    y0: float
    planar_lattice: Lattice | None = None

    def _arrays(self):
        keys = list(self.terms)
        if not keys:
            return np.zeros((0, self.dim)), np.zeros(0, dtype=complex)
        kv = np.array([[float(x) for x in k] for k in keys], dtype=float)
        return kv, np.array([self.terms[k] for k in keys], dtype=complex)

    def eval(self, points) -> np.ndarray | float:
        kv, coefs = self._arrays()
        out = _evaluate(kv, coefs, points)
        return float(out) if np.ndim(out) == 0 else out

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        for k, z in self.terms.items():
            other = self.terms.get(tuple(-x for x in k), 0j)
            if abs(other - z.conjugate()) > tol * max(1.0, abs(z)):
                return False
        return True

    def __len__(self):
        return len(self.terms)


def synthesize_shell(lattice: Lattice, r2) -> InvariantPattern:
    """Unit coefficients on every dual vector of squared length ``r2``."""
    ks = shell(lattice.dual, r2)
    if not ks:
        raise EmptyShellError(f"no dual-lattice vector has squared norm {r2}")
    return InvariantPattern(lattice, {k: 1.0 for k in ks})


def locate_shell(lattice: Lattice, size: int, max_r2: float | None = None) -> AlgebraicScalar:
    """Smallest dual-lattice norm whose shell has exactly ``size`` vectors."""
    dual = lattice.dual
    bound = max_r2 if max_r2 is not None else 4 * float(min(dual.gram[i][i] for i in range(dual.dim)))
    limit = max_r2 if max_r2 is not None else bound * 64
    while True:
        for r2, members in norm_shells(dual, bound):
            if len(members) == size:
                return r2
        if bound >= limit:
            raise EmptyShellError(f"no dual shell with {size} vectors up to squared norm {bound:g}")
        bound = min(bound * 2, limit)


def _dual_action(lattice: Lattice, linear) -> tuple:
    return PointIsometry.from_cartesian(lattice.dual, linear).m


def symmetrize(pattern: InvariantPattern, group: SpaceGroup) -> InvariantPattern:
    """Average of ``g . f`` over the coset representatives of ``group``.

    The representative ``(v, d)`` moves ``z_k`` to index ``d k`` with phase
    ``exp(-2 pi i <d k, v>)``.
    """
    if group.lattice != pattern.lattice:
        raise ValueError("pattern and group must share the lattice")
    dual = pattern.lattice.dual
    out: dict = {}
    reps = group.reps
    for g in reps:
        m = _dual_action(pattern.lattice, g.linear)
        trivial = la.is_zero_vector(g.translation)
        for k, z in pattern.terms.items():
            dk = tuple(sum(m[i][j] * k[j] for j in range(len(k))) for i in range(len(k)))
            if trivial:
                phase = 1.0
            else:
                # exact pairing, reduced modulo 1 before going to floats
                pairing = la.dot(dual.point(dk), g.translation)
                pairing = pairing - pairing.floor()
                phase = cmath.exp(-1j * TWO_PI * float(pairing))
            out[dk] = out.get(dk, 0j) + z * phase
    n = len(reps)
    return InvariantPattern(pattern.lattice, {k: z / n for k, z in out.items() if abs(z) > 1e-15})


def band_factor(k3, y0) -> complex:
    """``int_0^y0 exp(2 pi i k3 y) dy``; exactly zero when both arguments are
    exact and ``k3 * y0`` is a nonzero integer."""
    if isinstance(k3, AlgebraicScalar) and isinstance(y0, AlgebraicScalar):
        if k3.is_zero():
            return complex(float(y0))
        if (k3 * y0).is_integer():
            return 0j
    k = float(k3)
    y = float(y0)
    if k == 0.0:
        return complex(y)
    w = TWO_PI * k
    # (exp(i w y) - 1) / (i w), written to avoid cancellation for small w*y
    half = 0.5 * w * y
    return cmath.exp(1j * half) * (2 * math.sin(half) / w)


def band_project(pattern: InvariantPattern, y0, planar_lattice: Lattice | None = None) -> ProjectedPattern:
    """``x -> int_0^y0 f(x, y) dy`` term by term; ``y0`` may be exact or a float."""
    if not isinstance(y0, float):
        y0 = AlgebraicScalar.coerce(y0)
    if float(y0) <= 0:
        raise ValueError("projection depth must be positive")
    out: dict = {}
    mags: dict = {}
    for k, z in pattern.terms.items():
        kv = pattern.wave_vector(k)
        factor = band_factor(kv[-1], y0)
        if factor == 0:
            continue
        key = tuple(kv[:-1])
        out[key] = out.get(key, 0j) + z * factor
        mags[key] = mags.get(key, 0.0) + abs(z * factor)
    # contributions that cancel down to roundoff are dropped
    kept = {key: z for key, z in out.items() if abs(z) > CANCEL_TOL * mags[key]}
    return ProjectedPattern(kept, pattern.dim - 1, float(y0), planar_lattice)


def _float_isometry(s: Isometry):
    return la.to_float_matrix(s.linear), np.array([float(x) for x in s.translation])


def sample_cell(lattice: Lattice, n_samples: int, seed: int) -> np.ndarray:
    """Uniform points of the fundamental parallelogram, reproducible by seed."""
    rng = np.random.default_rng(seed)
    coords = rng.random((n_samples, lattice.dim))
    return coords @ lattice.float_basis


def verify_invariance(pattern: ProjectedPattern, s: Isometry, n_samples: int = 1000, seed: int = 0) -> float:
    """Largest ``|f(s^-1 x) - f(x)|`` over seeded sample points."""
    if pattern.planar_lattice is None:
        raise ValueError("pattern carries no planar lattice to sample from")
    pts = sample_cell(pattern.planar_lattice, n_samples, seed)
    q, t = _float_isometry(s)
    moved = (pts - t) @ q  # row form of q^T (x - t)
    return float(np.max(np.abs(pattern.eval(moved) - pattern.eval(pts))))
