"""Exception hierarchy.  ``exit_code`` is what the CLI returns for each class."""


class LurothError(Exception):
    exit_code = 1


class InputSyntaxError(LurothError):
    """Malformed generator text; carries 1-based line and column."""

    exit_code = 2

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line else ""
        super().__init__(f"{message}{where}")


class DegenerateInputError(LurothError):
    exit_code = 3


class SingularPointError(LurothError):
    """A specialization point makes some Q_j vanish."""

    exit_code = 4


class RetryExhaustedError(LurothError):
    exit_code = 4


class DegreeCapError(LurothError):
    exit_code = 4


class OracleUnavailableError(LurothError):
    exit_code = 4


class OracleDisagreementError(LurothError):
    exit_code = 5
