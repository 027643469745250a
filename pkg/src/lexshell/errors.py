"""Exception hierarchy for lexshell."""


class LexShellError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LexShellError):
    pass


class CycleDetected(ValidationError):
    pass


class UnknownElement(ValidationError):
    pass


class DuplicateElement(ValidationError):
    pass


class RelationEndpointMismatch(ValidationError):
    pass


class GeneratorDecomposable(ValidationError):
    pass


class NotComparable(LexShellError):
    pass


class NotBounded(LexShellError):
    pass


class IncompleteOrdering(LexShellError):
    pass


class SearchBoundExceeded(LexShellError):
    pass


class PathBoundExceeded(LexShellError):
    pass


class PrefixViolation(LexShellError):
    """A labelling gives two maximal chains of one scope comparable-as-prefix sequences."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroElement(LexShellError):
    pass


class IncomparableTie(LexShellError):
    pass


class OrderNotTotal(LexShellError):
    pass


class NoCarrier(LexShellError):
    pass


class NotInIdeal(LexShellError):
    pass


class TheoremViolation(LexShellError):
    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump


class SweepBudgetExceeded(LexShellError):
    pass


class ParseError(LexShellError):
    pass
