"""Exception hierarchy.

Everything raised on bad input derives from :class:`ValidationError` (the CLI
maps it to exit code 2). :class:`NoConvergence` is separate because it carries
the best value found so far.
"""


class ChanmetricError(Exception):
    pass


class ValidationError(ChanmetricError, ValueError):
    pass


class NonHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    def __init__(self, deviation, message=None):
        self.deviation = float(deviation)
        super().__init__(message or f"sum K^dag K deviates from identity by {self.deviation:.3e}")


class NotUnitary(ValidationError):
    pass


class BadWeights(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NotEffect(ValidationError):
    pass


class NonPositiveParameter(ValidationError):
    pass


class EpsilonTooLarge(ValidationError):
    pass


class ZeroMass(ValidationError):
    pass


class NotStochastic(ValidationError):
    pass


class NotPOVM(ValidationError):
    pass


class RouteUnavailable(ValidationError):
    pass


class ChainViolation(ChanmetricError):
    pass


class NoConvergence(ChanmetricError):
    def __init__(self, message, best_value=None, result=None):
        super().__init__(message)
        self.best_value = best_value
        self.result = result


class MalformedInput(ValidationError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
