"""Exception hierarchy shared by all modules."""


class OperadError(Exception):
    pass


# series

class ZeroConstantTerm(OperadError, ZeroDivisionError):
    pass


class NonzeroInnerConstant(OperadError, ValueError):
    pass


class NotReversible(OperadError, ValueError):
    pass


# parsing / input

class ParseError(OperadError, ValueError):
    """Input text could not be turned into a term, combination or file.

    ``pos`` is a 0-based character offset into the parsed text when known.
    """

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class TermSyntaxError(ParseError):
    pass


class UnknownGenerator(ParseError):
    pass


class ArityMismatch(ParseError):
    pass


class NotMultilinear(ParseError):
    pass


class MixedArity(ParseError):
    pass


class MalformedInput(OperadError, ValueError):
    pass


class InsufficientData(OperadError, ValueError):
    pass


# computation

class BudgetExceeded(OperadError, RuntimeError):
    pass


class IndexOutOfRange(OperadError, IndexError):
    pass


class PreconditionViolated(OperadError, ValueError):
    pass


class ConstructionFailed(OperadError, RuntimeError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class VerificationFailed(OperadError, AssertionError):
    def __init__(self, message, clause=None):
        self.clause = clause
        super().__init__(message)
