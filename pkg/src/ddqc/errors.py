"""Exception hierarchy shared across the package."""


class DDQCError(Exception):
    """Base class for all errors raised by ddqc."""


class ParseError(DDQCError, ValueError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")


class DomainError(DDQCError, ValueError):
    """An input lies outside the domain of an operation."""


class ParameterError(DDQCError, ValueError):
    """Invalid or mismatched configuration parameters."""


class FitError(DomainError):
    """The power-law fit is undefined for the given distribution."""


class DegenerateNormalizationError(DomainError):
    """All pairwise distances are equal, so z-scores are undefined."""
