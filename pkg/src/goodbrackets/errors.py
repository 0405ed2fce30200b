"""Exception types shared across the package."""


class GoodBracketError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(GoodBracketError):
    """Operands live in different truncated algebras (k or n differ)."""


class DomainError(GoodBracketError):
    """An input violates an operation's precondition."""


class NotLieElement(DomainError):
    """A series expected to be a Lie element fails the projection test."""


class A0DegreeError(DomainError):
    """A candidate carries a word with two or more occurrences of a0."""


class TruncationOverflow(DomainError):
    """The exact result of an operation does not fit below the degree bound."""


class CoverageError(GoodBracketError):
    """A moment-matrix entry needs a coefficient outside the index set."""


class DegenerateIdeal(GoodBracketError):
    """The quotient construction produces no usable new direction."""


class ParseError(GoodBracketError):
    """Expression syntax error; `offset` is the 0-based input position."""

    def __init__(self, message, offset):
        super().__init__("syntax error at offset %d: %s" % (offset, message))
        self.offset = offset
