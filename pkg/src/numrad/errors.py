"""Exception hierarchy shared across the package."""


class NumradError(Exception):
    """Base class for all package-specific errors."""


class DomainError(NumradError):
    """A scalar parameter or operand lies outside its admissible domain."""


class DimensionMismatch(NumradError):
    """Operands that must share a dimension do not."""


class EigenFailure(NumradError):
    """The eigenvalue solver failed or produced an unusable decomposition."""


class NotPsd(NumradError):
    """A matrix required to be positive semidefinite is not."""


class FunctionRangeError(NumradError):
    """A scalar function produced a negative or non-finite value on a spectrum point."""


class ObjectiveError(NumradError):
    """A sphere-optimization objective returned NaN."""
