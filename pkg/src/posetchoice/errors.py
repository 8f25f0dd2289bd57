"""Exception hierarchy shared by all modules."""


class PosetChoiceError(Exception):
    """Base class for every error raised by this package."""


class CycleError(PosetChoiceError):
    pass


class UnknownElement(PosetChoiceError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class DuplicateName(PosetChoiceError):
    pass


class CapExceeded(PosetChoiceError):
    pass


class NotIdeal(PosetChoiceError):
    pass


class NotAntichain(PosetChoiceError):
    pass


class NotTotal(PosetChoiceError):
    pass


class NotSelection(PosetChoiceError):
    pass


class DuplicateKey(PosetChoiceError):
    pass


class PosetMismatch(PosetChoiceError):
    pass


class NotConservative(PosetChoiceError):
    """Raised with the failing CheckReport attached as ``report``."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ElementNotChosen(PosetChoiceError):
    pass


class SelectorViolation(PosetChoiceError):
    pass


class FormatError(PosetChoiceError):
    """Malformed JSON input file."""


class RepeatedElement(PosetChoiceError, ValueError):
    pass
