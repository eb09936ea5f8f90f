"""Exception hierarchy shared by every radrat module."""


class RadratError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RadratError):
    """An argument is outside the mathematical domain of the operation."""


class ResourceLimitError(RadratError):
    """A configured cap (dimension, enumeration volume, precision, factoring
    effort) was exceeded.  The input is too hard for the configured limits,
    never silently wrong."""


class ParseError(RadratError):
    """Syntax or semantic error in model/expression text, with location."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


class ModelError(RadratError):
    """A model violates a precondition of the requested transformation."""


class DependentExponentsError(ModelError):
    """Exponential exponents are linearly dependent over Q, so the constraint
    cannot be split.  ``witness`` holds integer coefficients of a vanishing
    combination of ``alphas`` (first nonzero component positive)."""

    def __init__(self, alphas, witness):
        self.alphas = alphas
        self.witness = witness
        combo = " + ".join(f"({w})*a{i+1}" for i, w in enumerate(witness) if w)
        super().__init__(
            f"exponents are linearly dependent over Q: {combo} = 0"
        )


class ExportError(RadratError):
    """The model cannot be exported in the requested format."""
