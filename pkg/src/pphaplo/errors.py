"""Exception types raised across the package."""


class PPHError(Exception):
    """Base class for all package errors."""


class ParseError(PPHError, ValueError):
    pass


class EmptyInput(ParseError):
    pass


class RaggedRows(ParseError):
    def __init__(self, line, expected, got):
        super().__init__(f"line {line}: expected {expected} symbols, got {got}")
        self.line = line
        self.expected = expected
        self.got = got


class BadSymbol(ParseError):
    def __init__(self, line, column, symbol):
        super().__init__(f"line {line}, column {column}: bad symbol {symbol!r}")
        self.line = line
        self.column = column
        self.symbol = symbol


class LengthMismatch(PPHError, ValueError):
    pass


class ShapeMismatch(PPHError, ValueError):
    pass


class BadColumnIndex(PPHError, IndexError):
    pass


class SameColumnIndex(PPHError, ValueError):
    pass


class NotHeterozygous(PPHError, ValueError):
    pass


class OddCycle(PPHError):
    pass


class AnchorMissing(PPHError):
    pass


class NotAdmitting(PPHError):
    """Raised when a solution is requested for a rejected instance.

    The rejecting verdict is attached as ``verdict``.
    """

    def __init__(self, verdict):
        super().__init__(f"instance rejected: {verdict.report()}")
        self.verdict = verdict


class NotPerfectPhylogeny(PPHError):
    def __init__(self, pair):
        i, j = pair
        super().__init__(f"columns {i + 1} and {j + 1} violate the gamete condition")
        self.pair = pair


class TooLarge(PPHError):
    def __init__(self, count, cap):
        super().__init__(f"{count} heterozygous entries exceed the oracle cap of {cap}")
        self.count = count
        self.cap = cap
