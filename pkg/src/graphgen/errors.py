"""Exception types shared across the toolkit."""


class GraphGenError(Exception):
    """Base class for all toolkit errors."""


class InvalidNodeError(GraphGenError):
    """Node id outside the graph's 0..n-1 range."""


class InvalidParameterError(GraphGenError, ValueError):
    """Distribution parameter outside its admissible range."""


class InvalidConfigError(GraphGenError, ValueError):
    """Generator or baseline configuration violates its invariants."""


class DegenerateSupportError(GraphGenError):
    """A capped degree distribution has no probability mass left."""


class ExhaustedCapacityError(GraphGenError):
    """No admissible node or node pair remains for edge placement."""


class FormatError(GraphGenError):
    """Malformed corpus file; carries the offending path/line when known."""

    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc = f"{path}: "
        if line is not None:
            loc = f"{loc}line {line}: "
        super().__init__(f"{loc}{message}")
        self.path = path
        self.line = line
