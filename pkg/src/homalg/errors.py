"""Exception types.

Domain errors (a mathematical condition fails on valid input) derive from
``HomalgError``; the CLI maps them to exit status 1.
"""


class HomalgError(Exception):
    """A mathematical precondition failed."""


class DimensionError(ValueError):
    """Shapes do not fit; a usage error, not a domain failure."""


class NotWellDefined(HomalgError):
    """Generator images do not respect the relations of the domain."""


class NotAComplex(HomalgError):
    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"d∘d ≠ 0 at degree {degree}")


class SquareFails(HomalgError):
    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"chain map square does not commute at degree {degree}")


class NotSurjective(HomalgError):
    """A map that must be onto has nonzero cokernel."""


class NotExact(HomalgError):
    def __init__(self, position, message: str | None = None):
        self.position = position
        super().__init__(message or f"sequence not exact at position {position}")


class RowNotExact(NotExact):
    def __init__(self, position):
        super().__init__(position, f"snake diagram row not exact at {position}")


class NotCommutative(HomalgError):
    def __init__(self, square: str):
        self.square = square
        super().__init__(f"snake diagram square {square} does not commute")


class ParseError(ValueError):
    """Malformed input file; the message names the file and line when known."""
