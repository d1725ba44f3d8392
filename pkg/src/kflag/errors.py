class KFlagError(Exception):
    """Base class for errors raised by kflag."""


class UnsupportedType(KFlagError):
    """Unknown Cartan family/rank, or Weyl group larger than the configured bound."""


class DivisionByZero(KFlagError, ZeroDivisionError):
    pass


class SpecializationError(KFlagError):
    """A character exponent has no integral height (weight outside the root lattice)."""


class NonPolynomialResult(KFlagError):
    """An operator value that must be a Laurent polynomial failed to clear denominators."""


class MismatchError(KFlagError):
    """Two independent computations of the same quantity disagree."""


class PreconditionError(KFlagError):
    pass


class ConditionStarViolated(KFlagError):
    """Fixed point data has a non-minimal point without cotangent weight -1."""
