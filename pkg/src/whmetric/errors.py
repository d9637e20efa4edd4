"""Exception types raised by the library.

The CLI reports failures by class name, so every domain error gets its own class.
"""


class WHMetricError(Exception):
    """Base class for domain errors."""


class CompositeModulus(WHMetricError, ValueError):
    pass


class DivisionByZero(WHMetricError, ZeroDivisionError):
    pass


class LengthMismatch(WHMetricError, ValueError):
    pass


class InvalidBlockStructure(WHMetricError, ValueError):
    pass


class InvalidCrossover(WHMetricError, ValueError):
    pass


class ZeroCode(WHMetricError, ValueError):
    pass


class BudgetExceeded(WHMetricError, RuntimeError):
    pass


class InvalidDistance(WHMetricError, ValueError):
    pass


class InvalidDimension(WHMetricError, ValueError):
    pass


class NonIntegralTransform(WHMetricError, ValueError):
    pass


class LpInfeasible(WHMetricError, RuntimeError):
    """Raised by the simplex solver; never expected for the code-size LP."""


class LpUnbounded(WHMetricError, RuntimeError):
    pass


class LengthExceedsField(WHMetricError, ValueError):
    pass


class InvalidParameter(WHMetricError, ValueError):
    pass


class DecodeFailure(WHMetricError):
    """The received word lies outside the decoder's guaranteed correction radius."""


class MalformedCodeFile(WHMetricError, ValueError):
    pass
