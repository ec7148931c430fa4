"""Exception hierarchy.  Every error raised on purpose derives from FreePolyError."""


class FreePolyError(Exception):
    """Base class."""


class NotLineFree(FreePolyError, ValueError):
    pass


class PrecisionExhausted(FreePolyError, ArithmeticError):
    """A result is not decidable from the available truncation."""


class NotGaloisStable(FreePolyError):
    pass


class NoConvergence(FreePolyError):
    pass


class CrossCheckMismatch(FreePolyError):
    pass


class DegenerateCharacteristicData(FreePolyError, ValueError):
    pass


class CountMismatch(FreePolyError):
    pass


class DividesF(FreePolyError, ValueError):
    pass


class InvariantViolation(FreePolyError):
    pass


class NotRepresentable(FreePolyError, ValueError):
    pass


class NotQuasiOrdinaryAfterBlowup(FreePolyError):
    pass


class NoRootBranch(FreePolyError):
    pass


class NotFree(FreePolyError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class AppMismatch(FreePolyError):
    pass


class ParseError(FreePolyError, ValueError):
    def __init__(self, message, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")
