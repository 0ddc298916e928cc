"""Exception types raised across the package."""


class HusError(Exception):
    """Base class for all errors raised by hustab."""


class InvalidStepsError(HusError, ValueError):
    pass


class NonRegressiveError(HusError, ValueError):
    """1 + lambda*mu(t) vanishes at some grid point."""


class OutOfRangeError(HusError, IndexError):
    pass


class NotConvergentError(HusError, ValueError):
    pass


class NotApplicableError(HusError, ValueError):
    pass


class OutOfRegimeError(HusError, ValueError):
    pass


class PatternLengthMismatchError(HusError, ValueError):
    pass


class TooLargeError(HusError, ValueError):
    pass
