"""Exception hierarchy shared by all modules."""


class PathSumError(Exception):
    """Base class for every error raised by this package."""


class SubstitutionCycle(PathSumError):
    pass


class UnboundVariable(PathSumError):
    pass


class LiftBlowup(PathSumError):
    pass


class InvalidGate(PathSumError):
    pass


class ArityMismatch(PathSumError):
    pass


class IncompatibleSignature(PathSumError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"incompatible signature at coordinate {index}")


class NotApplicable(PathSumError):
    pass


class PreconditionViolated(PathSumError):
    pass


class TooLarge(PathSumError):
    pass


class ShapeMismatch(PathSumError):
    pass


class ParseError(PathSumError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UndeclaredQubit(ParseError):
    pass


class DuplicateQubit(ParseError):
    pass


class InvalidSize(PathSumError):
    pass


class SpecBlowup(PathSumError):
    pass


class EmptyCircuit(PathSumError):
    pass


class Timeout(PathSumError):
    pass
