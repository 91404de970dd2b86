"""Exception types shared across the package.

Each maps to a CLI exit code in cli.py; everything derives from
DescentError so the command layer can catch one base class.
"""


class DescentError(Exception):
    pass


class DivisionByZeroPoly(DescentError):
    pass


class DivisionByZeroElem(DescentError):
    pass


class FormNotPositiveDefinite(DescentError):
    pass


class FactorizationTooHard(DescentError):
    pass


class PrecisionExhausted(DescentError):
    pass


class ReconstructionFailed(DescentError):
    pass


class NoRootInField(DescentError):
    pass


class AmbiguousRoot(DescentError):
    pass


class NotAnOrder(DescentError):
    pass


class NoZeroDivisorFound(DescentError):
    pass


class NoRealSplitFound(DescentError):
    pass


class DimensionMismatch(DescentError):
    pass


class NoCubicFound(DescentError):
    pass


class NonGenericAction(DescentError):
    pass


class NormNotSquare(DescentError):
    pass


class PreconditionError(DescentError):
    """Violated operation precondition (bad input data)."""
