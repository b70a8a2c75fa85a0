class CrystalProjError(Exception):
    """Base class for computation errors raised by crystalproj."""


class NoAxisError(CrystalProjError):
    pass


class NoLatticePointError(CrystalProjError):
    pass


class NotScanningElementError(CrystalProjError):
    pass


class HypothesisNotMetError(CrystalProjError):
    pass


class EmptyShellError(CrystalProjError):
    pass


class DegenerateProjectionError(CrystalProjError):
    def __init__(self, rank, generators=()):
        super().__init__(f"projected lattice has rank {rank}")
        self.rank = rank
        self.generators = list(generators)


class NormalizationOutsideFieldError(CrystalProjError):
    """A normalising square root leaves Q(sqrt2, sqrt3).

    ``approximate`` holds a floating-point fallback matrix (not exact).
    """

    def __init__(self, message, approximate=None):
        super().__init__(message)
        self.approximate = approximate
