"""Exception hierarchy shared by every module of the package."""


class BifourierError(Exception):
    """Base class; ``kind`` is the stable name echoed by the CLI."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ZeroDivisor(BifourierError, ZeroDivisionError):
    """A bicomplex number on the null cone was used as a divisor."""


class DegenerateDenominator(BifourierError):
    pass


class NoConvergence(BifourierError):
    pass


class NotAPole(BifourierError):
    pass


class PoleOnRealAxis(BifourierError):
    pass


class ImproperRational(BifourierError):
    pass


class OutsideROC(BifourierError):
    pass


class QuadratureBudget(BifourierError):
    pass


class DiscontinuousAtZero(BifourierError):
    def __init__(self, message: str, left: float, right: float):
        super().__init__(message)
        self.left = left
        self.right = right


class DecayViolation(BifourierError):
    """A sampled signal value exceeds its declared exponential bound."""


class DSLSyntaxError(BifourierError, SyntaxError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{message} at offset {offset}"
                         + (f" (expected one of: {', '.join(expected)})" if expected else ""))
        self.offset = offset
        self.expected = expected

    @property
    def kind(self) -> str:
        return "SyntaxError"


class UnknownIdentifier(BifourierError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class NotRational(BifourierError):
    pass


class ZeroDenominator(BifourierError):
    pass
