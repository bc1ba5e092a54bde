"""Exception types raised across the package."""


class GaussianError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatch(GaussianError):
    pass


class NonSymmetric(GaussianError):
    pass


class NonPhysical(GaussianError):
    pass


class NonPositiveDefinite(GaussianError):
    pass


class ConvergenceFailure(GaussianError, ArithmeticError):
    pass


class FactorizationFailure(GaussianError, ArithmeticError):
    pass


class DomainError(GaussianError):
    pass


class NotPure(GaussianError):
    pass


class InvalidSpec(GaussianError):
    pass


class UnsupportedPair(GaussianError):
    pass


class TruncationTooSmall(GaussianError):
    pass


class NonHermitian(GaussianError):
    pass
