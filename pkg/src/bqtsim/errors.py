"""Exception hierarchy."""


class BQTError(Exception):
    """Base class for all errors raised by bqtsim."""


class RangeError(BQTError, ValueError):
    """A scalar parameter lies outside its admissible interval."""


class DimensionMismatch(BQTError, ValueError):
    pass


class NotHermitian(BQTError, ValueError):
    pass


class InvalidDensityMatrix(BQTError, ValueError):
    """Trace, hermiticity or positivity check failed."""


class CompletenessViolation(BQTError, ValueError):
    """Kraus family does not satisfy sum_i w_i K_i^dagger K_i = I."""


class BlochOutOfBall(BQTError, ValueError):
    pass


class SingularBloch(BQTError, ArithmeticError):
    """|v| -> 1 while the radial derivative v . dv stays finite."""


class QuadratureTooCoarse(BQTError, ArithmeticError):
    pass


class ConvergenceError(BQTError, ArithmeticError):
    pass


class ParseError(BQTError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(BQTError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
