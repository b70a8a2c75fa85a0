"""scikit-learn style wrappers around the projection pipeline.

``BandProjector`` learns a projected pattern from a lattice and maps planar
points to pattern values, so it can sit in a ``Pipeline`` as a feature
step.  ``ProjectedSymmetryClassifier`` learns the symmetry group of the
projections and labels candidate planar isometries.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .groups import Isometry, SpaceGroup, contains, projected_group
from .lattice import Lattice
from .patterns import band_project, locate_shell, synthesize_shell
from .scalar import AlgebraicScalar, parse_scalar

__all__ = ["BandProjector", "ProjectedSymmetryClassifier"]


def _as_group(obj, spec) -> SpaceGroup:
    if isinstance(obj, SpaceGroup):
        return obj
    if not isinstance(obj, Lattice):
        obj = Lattice(obj)
    return SpaceGroup.translations(obj) if spec == "translations" else SpaceGroup.holohedral(obj)


def _depth(y0):
    return parse_scalar(y0) if isinstance(y0, str) else AlgebraicScalar.coerce(y0)


class BandProjector(TransformerMixin, BaseEstimator):
    """Band projection of a single-shell pattern.

    Parameters
    ----------
    y0 : str or number
        Slab depth, exact text such as ``"r6/12"`` preferred.
    shell_r2 : str, optional
        Squared norm of the dual shell; ``shell_dim`` picks the first shell
        of that size instead.
    shell_dim : int, optional
    group : {"holohedral", "translations"}
        Used when ``fit`` receives a bare lattice.
    """

    def __init__(self, y0="1", shell_r2=None, shell_dim=None, group="holohedral"):
        self.y0 = y0
        self.shell_r2 = shell_r2
        self.shell_dim = shell_dim
        self.group = group

    def fit(self, X, y=None):
        """``X`` is a :class:`Lattice`, a basis or a :class:`SpaceGroup`."""
        group = _as_group(X, self.group)
        depth = _depth(self.y0)
        if self.shell_r2 is not None:
            r2 = _depth(self.shell_r2)
        elif self.shell_dim is not None:
            r2 = locate_shell(group.lattice, int(self.shell_dim))
        else:
            raise ValueError("set shell_r2 or shell_dim")
        self.group_ = group
        self.shell_r2_ = r2
        self.pattern_ = synthesize_shell(group.lattice, r2)
        self.projected_group_ = projected_group(group, depth)
        self.projected_pattern_ = band_project(self.pattern_, depth, self.projected_group_.lattice)
        self.n_features_in_ = group.lattice.dim - 1
        return self

    def transform(self, X):
        """Pattern values at planar points, shape ``(n_samples, 1)``."""
        check_is_fitted(self, "projected_pattern_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} coordinates per point, got {X.shape[1]}")
        return np.asarray(self.projected_pattern_.eval(X)).reshape(-1, 1)


class ProjectedSymmetryClassifier(ClassifierMixin, BaseEstimator):
    """Labels planar isometries as symmetries of every band projection at
    depth ``y0`` (True) or not (False)."""

    def __init__(self, y0="1", group="holohedral"):
        self.y0 = y0
        self.group = group

    def fit(self, X, y=None):
        group = _as_group(X, self.group)
        self.projected_group_ = projected_group(group, _depth(self.y0))
        self.classes_ = np.array([False, True])
        return self

    def predict(self, X):
        """``X`` holds :class:`Isometry` objects or ``(translation, linear)``
        pairs."""
        check_is_fitted(self, "projected_group_")
        out = []
        for item in X:
            g = item if isinstance(item, Isometry) else Isometry(*item)
            out.append(contains(self.projected_group_, g))
        return np.array(out, dtype=bool)
