"""Exception hierarchy; CLI maps these to exit codes."""


class ArrlabError(Exception):
    """Base class for all package errors."""


class InputError(ArrlabError):
    """Malformed or out-of-range input (CLI exit code 3)."""


class NotAFlat(InputError):
    """A Flat argument does not belong to the arrangement's lattice."""


class BudgetExceeded(ArrlabError):
    """A configured search budget ran out (CLI exit code 2)."""

    def __init__(self, message: str, **info):
        super().__init__(message)
        self.info = info
