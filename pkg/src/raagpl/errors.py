"""Exception hierarchy shared by every module.

The CLI maps these onto exit statuses: ``InputError`` -> 1,
``DomainError`` -> 2, ``VerificationError`` -> 3.
"""


class RaagError(Exception):
    """Base class for all library errors."""


class InputError(RaagError, ValueError):
    """Malformed input: unknown vertex, bad syntax, unreduced argument."""


class ParseError(InputError):
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


class DomainError(RaagError, ValueError):
    """Well-formed input outside an operation's domain (e.g. the identity
    element handed to the witness construction)."""


class VerificationError(RaagError):
    """A certificate check failed.

    ``stage`` and ``detail`` carry the first failing assertion with exact
    rationals, for debugging.
    """

    def __init__(self, message, stage=None, detail=None):
        self.stage = stage
        self.detail = detail or {}
        super().__init__(message)
