"""Exception types shared across the package."""


class QrcubeError(Exception):
    """Base class for all package errors."""


class ShapeError(QrcubeError, ValueError):
    """Operand dimensions are incompatible."""


class DomainError(QrcubeError, ValueError):
    """An argument lies outside the operation's domain."""


class ConvergenceError(QrcubeError, ArithmeticError):
    """An iterative method gave up before meeting its tolerance.

    ``residual`` holds the best error estimate reached.
    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class ParseError(QrcubeError, ValueError):
    """Malformed move text; ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
