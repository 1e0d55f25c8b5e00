"""Exception types shared across the toolkit."""


class OpenNodesError(Exception):
    """Base class for all toolkit errors."""


class EmptyInput(OpenNodesError):
    """An operation received no usable input (empty token list, no lengths)."""


class ParseError(OpenNodesError):
    """Malformed bracketed expression.

    position is the 0-based character offset of the offending character;
    for truncated input it equals the length of the text.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class IngestError(OpenNodesError):
    """A corpus line could not be turned into a document."""

    def __init__(self, line_no, cause):
        super().__init__(f"line {line_no}: {cause}")
        self.line_no = line_no
        self.cause = cause


class ConfigError(OpenNodesError):
    """Invalid simulation or comparison configuration."""


class EmptyAfterFilter(OpenNodesError):
    """Every record was removed by the length filter."""


class FitError(OpenNodesError):
    """Normal equations were singular during a least-squares fit."""

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class DomainError(OpenNodesError):
    """Argument outside the mathematical domain (e.g. df < 1)."""


class DegenerateSample(OpenNodesError):
    """Statistic undefined for the sample (e.g. zero variance)."""
