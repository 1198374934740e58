"""Exception types raised across the package."""


class HCPError(Exception):
    """Base class for all errors raised by hcpres."""


class IndexOutOfRange(HCPError, IndexError):
    pass


class SelfLoop(HCPError, ValueError):
    pass


class ParseError(HCPError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidParam(HCPError, ValueError):
    pass


class NumericalFailure(HCPError, ArithmeticError):
    pass


class DisconnectedPair(HCPError, ValueError):
    pass


class InfiniteEntries(HCPError, ValueError):
    pass


class Disconnected(HCPError, ValueError):
    pass


class WeightOverflow(HCPError, OverflowError):
    pass
