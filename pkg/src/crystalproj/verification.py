"""Reference data for the cubic projection example and checks against it.

Each row lists a depth, the expected projected lattice and generators of the
expected planar symmetry group.  ``reference_checks`` recomputes everything and
reports one :class:`Check` per comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import Isometry, SpaceGroup, contains, generated_group, projected_group
from .lattice import Lattice, member, shell
from .patterns import InvariantPattern, band_project, symmetrize, synthesize_shell, verify_invariance
from .presets import preset_lattice
from .scalar import parse_scalar

__all__ = ["Check", "ReferenceRow", "REFERENCE_ROWS", "ROT60", "MIRROR_X", "reference_checks", "same_lattice", "same_group", "random_invariant_pattern"]

ROT60 = (("1/2", "-r3/2"), ("r3/2", "1/2"))
MINUS_ROT60 = (("-1/2", "r3/2"), ("-r3/2", "-1/2"))
MIRROR_X = ((-1, 0), (0, 1))
HEX = [(1, 0), ("1/2", "r3/2")]

INVARIANCE_TOL = 1e-9
BREAKING_MIN = 1e-3


@dataclass(frozen=True)
class ReferenceRow:
    name: str
    y0: str
    lattice: list
    generators: list  # (translation, linear) pairs
    order: int


REFERENCE_ROWS = [
    ReferenceRow("row 1", "r6/2", [("1/2", "r3/6"), ("1/2", "-r3/6")], [((0, 0), ROT60), ((0, 0), MIRROR_X)], 12),
    ReferenceRow("row 2", "r6/3", HEX, [(("1/2", "r3/6"), ROT60), ((0, 0), MIRROR_X)], 12),
    ReferenceRow("row 3", "2/3*r6", HEX, [(("1/2", "-r3/6"), ROT60), ((0, 0), MIRROR_X)], 12),
    ReferenceRow("row 4", "r6/12", HEX, [((0, 0), MINUS_ROT60), ((0, 0), MIRROR_X)], 6),
]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def same_lattice(a: Lattice, b: Lattice) -> bool:
    """Equality as point sets, by mutual membership of the bases."""
    return all(member(a, v) is not None for v in b.basis) and all(member(b, v) is not None for v in a.basis)


def same_group(a: SpaceGroup, b: SpaceGroup) -> bool:
    return (
        same_lattice(a.lattice, b.lattice)
        and a.order == b.order
        and all(contains(a, g) for g in b.reps)
    )


def expected_group(row: ReferenceRow) -> SpaceGroup:
    lattice = Lattice(row.lattice)
    return generated_group(lattice, [Isometry(t, q) for t, q in row.generators])


def cubic_group() -> SpaceGroup:
    return SpaceGroup.holohedral(preset_lattice("cubic-p1"))


def reference_checks(n_samples: int = 1000, seed: int = 0, group: SpaceGroup | None = None) -> list[Check]:
    group = group or cubic_group()
    shell_pattern = synthesize_shell(group.lattice, 2)
    rot = Isometry((0, 0), ROT60)
    checks = []
    for row in REFERENCE_ROWS:
        y0 = parse_scalar(row.y0)
        computed = projected_group(group, y0)
        expected = expected_group(row)
        checks.append(
            Check(
                f"{row.name} symmetry group (y0 = {y0})",
                same_group(computed, expected) and computed.order == row.order,
                f"order {computed.order} (expected {row.order}), "
                f"lattice match {same_lattice(computed.lattice, expected.lattice)}",
            )
        )
        projected = band_project(shell_pattern, y0, computed.lattice)
        worst = max(verify_invariance(projected, g, n_samples, seed) for g in computed.generators())
        note = " (projection vanishes identically)" if len(projected) == 0 else ""
        checks.append(
            Check(f"{row.name} invariance certificates", worst <= INVARIANCE_TOL, f"max deviation {worst:.3e}{note}")
        )
        if not contains(expected, rot):
            dev = verify_invariance(projected, rot, n_samples, seed)
            checks.append(
                Check(f"{row.name} pure 60 degree rotation broken", dev >= BREAKING_MIN, f"deviation {dev:.3e}")
            )
    return checks


def random_invariant_pattern(group: SpaceGroup, radii=("2", "4", "6", "8"), seed: int = 0):
    """Symmetrised pattern with random Hermitian coefficients on several
    shells; used where the single-shell pattern projects to zero."""
    rng = np.random.default_rng(seed)
    terms = {}
    for r2 in radii:
        for k in shell(group.lattice.dual, r2):
            if k in terms:
                continue
            z = complex(rng.normal(), rng.normal())
            terms[k] = z
            terms[tuple(-c for c in k)] = z.conjugate()
    return symmetrize(InvariantPattern(group.lattice, terms), group)
