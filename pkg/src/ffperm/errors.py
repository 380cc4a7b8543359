"""Exception types raised across the package.

Every precondition failure raises a subclass of :class:`FFPermError` so
callers (and the CLI) can distinguish bad input from genuine bugs, which
surface as plain ``RuntimeError``.
"""


class FFPermError(Exception):
    """Base class for all input/precondition errors."""


# field construction and arithmetic

class NotPrime(FFPermError):
    pass


class ReducibleModulus(FFPermError):
    pass


class DegreeMismatch(FFPermError):
    pass


class FieldTooLarge(FFPermError):
    pass


class DivisionByZero(FFPermError, ZeroDivisionError):
    pass


class FieldMismatch(FFPermError):
    pass


class NotADivisor(FFPermError):
    pass


# function tables

class CodomainViolation(FFPermError):
    pass


class DomainMismatch(FFPermError):
    pass


class ZeroLambda(FFPermError):
    pass


# translators

class GammaZero(FFPermError):
    pass


class BNotInSubfield(FFPermError):
    pass


class ConditionNotMet(FFPermError):
    pass


# constructions

class LNotPermutation(FFPermError):
    pass


class WitnessInvalid(FFPermError):
    pass


class KTooSmall(FFPermError):
    pass


class NuInvalid(FFPermError):
    pass


# inverses

class BNonzero(FFPermError):
    pass


class GammaConditionFailed(FFPermError):
    pass


class LambdaForbidden(FFPermError):
    pass


# the x^{p^k} - x + delta family

class InvariantViolation(FFPermError):
    pass


class ImageEscapesS(RuntimeError):
    """Sentinel: the subspace reduction produced a value outside the
    trace-zero subspace, which the underlying identity rules out."""


class DeltaNotInS(FFPermError):
    pass


class RhoNotInSubfield(FFPermError):
    pass


class HNotSubfieldValued(FFPermError):
    pass


class PreconditionFailed(FFPermError):
    pass
