"""Exception taxonomy shared by all modules.

Domain errors always carry the violated inequality as text, because every
precondition in this library is a hypothesis of some theorem that callers
will eventually trip over.
"""


class DomainError(ValueError):
    """An argument violates a stated hypothesis (message names the inequality)."""


class PrecisionError(ArithmeticError):
    """A numerical routine cannot reach the requested accuracy."""


class ResourceError(RuntimeError):
    """An exact computation exceeds its configured budget."""


class RangeError(ValueError):
    """A search target lies outside the achievable range."""


class BoundViolation(AssertionError):
    """A quantity exceeded a bound that the library asserts while computing."""


class ZerosParseError(ValueError):
    """A zero-ordinate file is malformed (message carries the line number)."""


class InsufficientDataError(ValueError):
    """An input table is too short for the requested computation."""


def require(condition: bool, inequality: str) -> None:
    """Raise DomainError naming the violated constraint unless condition holds."""
    if not condition:
        raise DomainError("violated: " + inequality)
