class MinorcertError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(MinorcertError):
    """A caller broke the precondition of an operation."""


class ParseError(InputError):
    """
    Malformed graph or certificate text.

    `line` is 1-based for line-oriented formats, `position` is a 0-based byte
    offset for graph6.
    """

    def __init__(self, message, line=None, position=None):
        self.line = line
        self.position = position
        where = ""
        if line is not None:
            where = f"line {line}: "
        elif position is not None:
            where = f"byte {position}: "
        super().__init__(f"{where}{message}")


class OracleLimitError(InputError):
    """The instance is larger than the configured oracle limit."""

    def __init__(self, what, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} refused: size {size} exceeds limit {limit}")


class ProofInvariantError(MinorcertError):
    """A step of a constructive proof did not hold. Always a finding."""
