"""Exception hierarchy shared by every layer of prcalc."""


class PrcalcError(Exception):
    """Base class for all engine errors."""


class ChartMismatch(PrcalcError):
    def __init__(self, left, right):
        super().__init__(f"chart mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class FrameIndexError(PrcalcError, IndexError):
    pass


class MalformedExpr(PrcalcError):
    pass


class NotDivisible(PrcalcError):
    """Raised by divide_z when a term carries no factor of z."""

    def __init__(self, term):
        super().__init__(f"term without z factor: {term}")
        self.term = term


class CertificateFailed(PrcalcError):
    def __init__(self, residual, message="partition certificate failed"):
        super().__init__(f"{message}; residual = {residual}")
        self.residual = residual


class CentralityFailed(PrcalcError):
    def __init__(self, witness, kind):
        super().__init__(f"{kind} with probe {witness} does not vanish")
        self.witness = witness
        self.kind = kind


class ContextMismatch(PrcalcError):
    pass


class NotSemisimple(PrcalcError):
    pass


class CutoffTooSmall(PrcalcError):
    pass


class WrongChart(PrcalcError):
    pass


class UnknownSuite(PrcalcError):
    pass


class BadArgument(PrcalcError):
    """A command flag or scheme reference that cannot be interpreted."""


class UnboundName(PrcalcError):
    def __init__(self, name, line=None, column=None):
        where = f" at {line}:{column}" if line is not None else ""
        super().__init__(f"unbound name {name!r}{where}")
        self.name = name
        self.line = line
        self.column = column


class DSLSyntaxError(PrcalcError):
    """Parse failure with 1-based position and the set of tokens that would have been accepted."""

    def __init__(self, message, line, column, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")
