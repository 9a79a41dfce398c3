"""Exception types shared across the package."""


class JugglePipeError(ValueError):
    """Base class for every error raised by this package."""


class IncompatibleGroupError(JugglePipeError):
    pass


class NotFullyCommutativeError(JugglePipeError):
    pass


class CollisionError(JugglePipeError):
    def __init__(self, time, throws):
        self.time = time
        self.throws = throws
        super().__init__(f"two balls land at time {time} (thrown at {throws[0]} and {throws[1]})")


class NegativeThrowError(JugglePipeError):
    pass


class UnsatisfiableConditionError(JugglePipeError):
    pass


class RankDeficientError(JugglePipeError):
    pass


class IllegalMoveError(JugglePipeError):
    pass


class MalformedLambdaError(JugglePipeError):
    pass


class NotPureError(JugglePipeError):
    pass


class NonSquareError(JugglePipeError):
    pass


class ZeroPolynomialError(JugglePipeError):
    pass


class ResourceLimitError(JugglePipeError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class NonSquarefreeError(JugglePipeError):
    pass


class EmptyPatchError(JugglePipeError):
    """The identity columns of the patch already violate a rank bound."""


class SymbolicInputError(JugglePipeError):
    pass


class RetryExhaustedError(JugglePipeError):
    pass


class NonRectangularShapeError(JugglePipeError):
    pass


class NotBottomError(JugglePipeError):
    pass


class InvalidDiagramError(JugglePipeError):
    pass
