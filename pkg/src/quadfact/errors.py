"""Exception types shared across the package."""


class QuadfactError(Exception):
    """Base class for all library-specific errors."""


class InputDomainError(QuadfactError, ValueError):
    """Invalid input: bad interval, function undefined on [a, b], bad selector."""


class OrderError(InputDomainError):
    """A function does not expose enough derivatives for the requested operator."""


class CoincidentRootsError(InputDomainError):
    """Two characteristic roots are too close; merge them into one multiplicity."""


class KernelConditionError(QuadfactError):
    """The measure does not annihilate the operator's null space."""


class NonConvergenceError(QuadfactError, ArithmeticError):
    """A series or adaptive quadrature did not reach the requested tolerance."""


class MultiplicityUndeterminedError(NonConvergenceError):
    """All tested spectral derivatives vanish below tolerance."""


class ComplexResidueError(QuadfactError, ArithmeticError):
    """A value that must be real carries a non-negligible imaginary part."""


class DegenerateMeanValueError(QuadfactError, ArithmeticError):
    """Mean-value search hit a zero weight with nonzero remainder."""
