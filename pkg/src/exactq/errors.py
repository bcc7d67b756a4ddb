"""Exception types raised by the library and the command line front end."""


class QuantumError(Exception):
    """Base class for every error raised by exactq."""


class ShapeMismatch(QuantumError, ValueError):
    pass


class IndexOutOfRange(QuantumError, IndexError):
    pass


class ArityMismatch(QuantumError, ValueError):
    pass


class ArityTooSmall(QuantumError, ValueError):
    pass


class NegativeInput(QuantumError, ValueError):
    pass


class NotUnitVector(QuantumError, ValueError):
    """The squared norm of a candidate state is not exactly one."""

    def __init__(self, norm_sq):
        self.norm_sq = norm_sq
        super().__init__(f"state vector has squared norm {norm_sq}, expected 1")


class NotUnitary(QuantumError, ValueError):
    pass


class SqrtNotRepresentable(QuantumError, ArithmeticError):
    """A square root needed for renormalisation falls outside Q(i, sqrt 2)."""

    def __init__(self, value):
        self.value = value
        super().__init__(
            f"sqrt({value}) is not representable in the exact field; "
            "use the float backend for this state"
        )


class NonPositiveSum(QuantumError, ValueError):
    pass


class NotCollapsed(QuantumError, ValueError):
    pass


class ProtocolViolation(QuantumError, RuntimeError):
    pass


class ParseError(QuantumError, ValueError):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class ValidationError(QuantumError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class AssertionFailed(QuantumError):
    """One or more ``assert entangled`` instructions did not hold."""

    def __init__(self, failures):
        self.failures = list(failures)
        lines = [
            f"branch {f.branch}: entangled {f.i} {f.j} expected {str(f.expected).lower()}, "
            f"got {str(f.actual).lower()}"
            for f in self.failures
        ]
        super().__init__("; ".join(lines))
