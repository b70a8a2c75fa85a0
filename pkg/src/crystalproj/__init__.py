"""Exact crystallographic groups in Q(sqrt2, sqrt3), the symmetry groups of
band projections of lattice-periodic functions, and pattern rendering."""

from .estimators import BandProjector, ProjectedSymmetryClassifier
from .exceptions import (
    CrystalProjError,
    DegenerateProjectionError,
    EmptyShellError,
    HypothesisNotMetError,
    NoAxisError,
    NoLatticePointError,
    NormalizationOutsideFieldError,
    NotScanningElementError,
)
from .groups import (
    Isometry,
    SpaceGroup,
    contains,
    gamma_y0,
    generated_group,
    is_projected_symmetry,
    projected_group,
    projected_lattice,
    scanning_subgroup,
)
from .lattice import Lattice, Plane, PointIsometry, dual, holohedry, member, plane_intersection, shell
from .patterns import (
    InvariantPattern,
    ProjectedPattern,
    band_factor,
    band_project,
    locate_shell,
    symmetrize,
    synthesize_shell,
    verify_invariance,
)
from .presets import Scene, figure_presets, figure_scene, preset_lattice
from .projection import (
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
from .render import RasterImage, quantize, render, write_pgm, write_png
from .scalar import AlgebraicScalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "BandProjector",
    "ProjectedSymmetryClassifier",
    "CrystalProjError",
    "DegenerateProjectionError",
    "EmptyShellError",
    "HypothesisNotMetError",
    "NoAxisError",
    "NoLatticePointError",
    "NormalizationOutsideFieldError",
    "NotScanningElementError",
    "Isometry",
    "SpaceGroup",
    "contains",
    "gamma_y0",
    "generated_group",
    "is_projected_symmetry",
    "projected_group",
    "projected_lattice",
    "scanning_subgroup",
    "Lattice",
    "Plane",
    "PointIsometry",
    "dual",
    "holohedry",
    "member",
    "plane_intersection",
    "shell",
    "InvariantPattern",
    "ProjectedPattern",
    "band_factor",
    "band_project",
    "locate_shell",
    "symmetrize",
    "synthesize_shell",
    "verify_invariance",
    "Scene",
    "figure_presets",
    "figure_scene",
    "preset_lattice",
    "analyze_projection",
    "change_of_coordinates",
    "check_depth_rationality",
    "check_rotated_generators",
    "descend_check",
    "enumerate_hexagonal_planes",
    "hexagonal_classifier",
    "lift_check",
    "project_into_plane",
    "rationally_compatible",
    "RasterImage",
    "quantize",
    "render",
    "write_pgm",
    "write_png",
    "AlgebraicScalar",
    "parse_scalar",
]
