"""Exception types shared across the toolkit."""


class BraidkitError(Exception):
    """Base class for all errors raised by braidkit."""

    def as_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class FieldMismatchError(BraidkitError):
    """Two operands live over different base fields."""


class ScalarDivisionError(BraidkitError):
    """Division by zero in the base field."""


class DomainError(BraidkitError):
    """An argument is outside the documented domain of an operation."""


class ShapeError(BraidkitError):
    """Matrix or tensor shapes do not line up."""


class BraidEquationError(BraidkitError):
    """A candidate braiding fails the braid equation."""


class NotHeckeError(BraidkitError):
    """An operation requires a Hecke-type braiding of the given mark."""


class IncompatibleBracketError(BraidkitError):
    """A bracket fails the braiding compatibility identities."""


class UnsupportedOperationError(BraidkitError):
    """The operation is not available for these inputs (for example
    exhaustive enumeration over an infinite field)."""


class UnstableFiltrationError(BraidkitError):
    """A filtration level has not stabilised at the working closure cutoff."""


class InputFormatError(BraidkitError):
    """A JSON job or object specification is malformed."""
