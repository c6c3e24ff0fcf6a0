class BraidlinkError(Exception):
    """Base class for all errors raised by braidlink."""


class ParseError(BraidlinkError, ValueError):
    """Malformed word, symbol or presentation text."""


class SemanticError(BraidlinkError, ValueError):
    """Well-formed input that violates a mathematical precondition."""


class NotPrimitiveError(SemanticError):
    """A tensor expected to be a Lie element failed the Dynkin criterion."""


class DimensionError(SemanticError):
    """Shapes or cutoffs of two operands do not match."""
