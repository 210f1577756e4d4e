"""Exception hierarchy shared by the library and the CLI."""


class DivlabError(Exception):
    """Base class for all errors raised by divlab."""

    exit_code = 3


class FamilyError(DivlabError, ValueError):
    """Invalid subset or family input (bad element, ground-size mismatch...)."""


class BudgetExceeded(DivlabError):
    """An explicit enumeration would exceed the configured memory budget."""

    exit_code = 4


class ConstructionError(DivlabError):
    """A property asserted at build time failed. Carries the witness."""

    exit_code = 5

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SfamParseError(DivlabError):
    exit_code = 6

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
