"""Exception types shared across the package."""


class QuatspecError(Exception):
    """Base class for all package-specific errors."""


class InputError(QuatspecError):
    """Malformed input data or an unusable run configuration."""


class SingularOperator(QuatspecError):
    """Inversion refused: the operator is numerically singular."""

    def __init__(self, message, smallest_singular=0.0):
        super().__init__(message)
        self.smallest_singular = smallest_singular


class NotInResolventSet(QuatspecError):
    """The requested point lies in (or too close to) the S-spectrum."""

    def __init__(self, message, smallest_singular=0.0):
        super().__init__(message)
        self.smallest_singular = smallest_singular


class DegenerateConfiguration(QuatspecError):
    """A two-point identity was evaluated at points on a common sphere."""


class OutsideConvergenceDomain(QuatspecError):
    """Series evaluation requested outside its Cassini ball of convergence."""
