"""Exception types shared across the toolkit."""


class CdlError(Exception):
    """Base class for all toolkit errors."""


class ParseError(CdlError):
    """Syntax error in a contract, regex, formula, or input file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class UndeclaredActionError(ParseError):
    """An action name was used that is not in the declared alphabet."""


class IllFormedContractError(CdlError):
    """A contract breaks one of the recursion/binding restrictions."""


class AlphabetMismatchError(CdlError):
    """Two inputs (contract, trace, machine) disagree on the alphabet."""


class ConflictPreconditionError(CdlError):
    """conflict() was queried on a prefix that already decided the conjunction."""


class AutomatonError(CdlError):
    """An automaton invariant (determinism, totality) failed to hold."""
