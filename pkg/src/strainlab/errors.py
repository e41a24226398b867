"""Exception types shared across the library."""


class StrainlabError(Exception):
    """Base class for all strainlab errors."""


class NotSymmetricError(StrainlabError):
    """Input matrix is not symmetric within tolerance."""


class NoConvergenceError(StrainlabError):
    """An iterative solver exhausted its sweep budget."""


class SingularInputError(StrainlabError):
    """Matrix is singular (or numerically too close to singular)."""


class NegativeDeterminantError(StrainlabError):
    """Operation requires a matrix with positive determinant."""


class NotSPDError(StrainlabError):
    """Matrix is not symmetric positive-definite."""


class DimensionMismatchError(StrainlabError):
    """Operands have incompatible shapes."""


class InvalidMetricError(StrainlabError):
    """Metric parameters violate the positive-definiteness constraints."""


class MidpointSingularError(StrainlabError):
    """A segment midpoint is too close to singular to serve as a base point."""


class UnsupportedDimensionError(StrainlabError):
    """A sampling scheme does not support the requested dimension."""
