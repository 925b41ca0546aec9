"""Exception hierarchy shared across the package."""


class CesqmError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(CesqmError):
    """A parameter combination is outside the defined range (e.g. a gamma-function
    pole, a forbidden Kummer denominator, or a malformed family spec)."""


class ConvergenceError(CesqmError):
    """An iterative evaluation failed its stopping criterion within the cap."""


class DomainError(CesqmError):
    """A coordinate lies outside the configuration space of the family."""


class InadmissibleSpecError(CesqmError):
    """The operation requires an admissible parameter point and got one that
    fails the positivity/ratio conditions."""


class SingularPotentialError(CesqmError):
    """u(x) <= 0 was encountered where the partner potential must be regular."""


class GridMismatchError(CesqmError):
    """Two grid functions that must share a grid do not."""
