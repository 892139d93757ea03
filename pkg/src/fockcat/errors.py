"""Exception hierarchy shared by every module of the package."""


class FockcatError(Exception):
    """Base class for all errors raised by fockcat."""


class DomainMismatch(FockcatError, TypeError):
    """Two morphisms were combined with incompatible domains or codomains."""


class IndexOutOfRange(FockcatError, IndexError):
    pass


class InvariantViolation(FockcatError, ValueError):
    """A value failed a structural invariant (shape, finiteness, ...)."""


class LawViolation(FockcatError, ValueError):
    """A presentation does not satisfy the algebraic laws an operation needs."""


class ParseError(FockcatError, ValueError):
    pass


class ExprSyntaxError(FockcatError, SyntaxError):
    """Malformed expression text.  ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.line = line
        self.column = column

    def __str__(self):
        return f"{self.msg} (line {self.line}, column {self.column})"


class ExprTypeError(FockcatError, TypeError):
    """An expression is ill-typed; carries the offending subexpression text."""

    def __init__(self, message, subexpr=None, left=None, right=None):
        super().__init__(message)
        self.subexpr = subexpr
        self.left = left
        self.right = right
