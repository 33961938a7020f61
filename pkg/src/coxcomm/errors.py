"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class CoxeterError(Exception):
    exit_code = 3


class GraphParseError(CoxeterError, ValueError):
    exit_code = 2


class UnknownGeneratorError(CoxeterError, KeyError):
    exit_code = 3

    def __str__(self):
        return Exception.__str__(self)


class InfiniteTypeError(CoxeterError):
    """Raised when an operation needs W_X finite and it is not."""


class PreconditionError(CoxeterError, ValueError):
    pass


class UnsupportedLabelError(CoxeterError):
    """A finite label outside the exactly supported set {2,3,4,5,6}."""


class BudgetExceeded(CoxeterError):
    exit_code = 4
