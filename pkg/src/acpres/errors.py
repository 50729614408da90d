"""Exception types shared across the package."""


class AcpresError(Exception):
    """Base class for all package-specific errors."""


class ParseError(AcpresError):
    """Malformed text input; carries the offending character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SameGenerator(AcpresError):
    """An operation that needs two distinct indices got equal ones."""


class GeneratorOutOfRange(AcpresError):
    """A letter references a generator outside the declared range."""


class IndexOutOfRange(AcpresError):
    """A relator, generator or curve index is out of bounds."""


class NotACancellablePair(AcpresError):
    """Cancel was pointed at letters that are not mutually inverse."""


class DestabilizeBlocked(AcpresError):
    """Destabilization preconditions fail for the given generator/relator."""


class NotInvertibleAsSingleMove(AcpresError):
    """No short primitive move sequence undoes this move exactly."""


class InvalidMoveAt(AcpresError):
    """Transcript replay failed; records the move index and the cause."""

    def __init__(self, index, cause):
        super().__init__(f"move {index + 1}: {cause}")
        self.index = index
        self.cause = cause


class NotSquare(AcpresError):
    """Determinant requested for a non-square matrix."""


class Unbalanced(AcpresError):
    """A balanced diagram or presentation was required."""


class SameCurve(AcpresError):
    """A handle slide needs two distinct curves."""


class DifferentComponents(AcpresError):
    """Curves live on different diagram components."""


class InvalidParameter(AcpresError):
    """A parameter is outside its documented range."""
