class NonattackError(Exception):
    """Base class for every error raised by the counting engine."""


class InvalidGraphError(NonattackError, ValueError):
    pass


class IdenticallyZeroCount(NonattackError):
    """Unbounded horizontal moves with two pieces in a row: nothing to count."""


class UnlabelledCountError(NonattackError, ValueError):
    pass


class OracleCapExceeded(NonattackError):
    pass


class PieceDefinitionError(NonattackError, ValueError):
    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InternalConsistencyError(NonattackError, RuntimeError):
    """A result that can only come from a bug, such as a fractional count."""
