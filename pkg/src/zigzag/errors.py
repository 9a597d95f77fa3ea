"""Exception types raised across the package."""


class ZigzagError(ValueError):
    """Base class for all domain errors."""


class InvalidCompositionError(ZigzagError):
    pass


class InvalidDescentError(ZigzagError):
    pass


class EmptyRestrictionError(ZigzagError):
    pass


class InvalidPermutationError(ZigzagError):
    pass


class IncompleteInputError(ZigzagError):
    pass


class UndefinedPaintboxError(ZigzagError):
    pass


class DegenerateSampleError(ZigzagError):
    """A paintbox sample hit a tie or a component endpoint; the caller resamples."""


class InvalidValleyError(ZigzagError):
    pass


class NotApplicableError(ZigzagError):
    pass


class InvalidPeakError(ZigzagError):
    pass


class InvalidTableauError(ZigzagError):
    pass


class BoundExceededError(ZigzagError):
    pass


class ConfigMismatchError(ZigzagError):
    pass
