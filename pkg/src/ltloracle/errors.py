"""Exception hierarchy shared by all subpackages.

The CLI maps each category to its own exit code.
"""


class LtlOracleError(Exception):
    exit_code = 1


class LtlSyntaxError(LtlOracleError):
    exit_code = 2

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownAtomError(LtlOracleError):
    exit_code = 2

    def __init__(self, name: str):
        super().__init__(f"unknown atom {name!r} (not in the declared alphabet)")
        self.name = name


class InvalidSpecError(LtlOracleError):
    exit_code = 2


class ImpossibleLengthError(LtlOracleError):
    exit_code = 2


class FormatError(LtlOracleError):
    """A file or text block could not be parsed."""

    exit_code = 3


class ResourceLimitError(LtlOracleError):
    exit_code = 4


class MalformedLassoError(LtlOracleError):
    exit_code = 4


class ExternalToolError(LtlOracleError):
    exit_code = 5


class ExternalTimeoutError(ExternalToolError):
    exit_code = 6


class UnrecognizedOutputError(ExternalToolError):
    exit_code = 5


class DimensionMismatchError(LtlOracleError):
    exit_code = 7


class TrainingError(LtlOracleError):
    exit_code = 7


class SingleClassError(LtlOracleError):
    exit_code = 8


class SchemaMismatchError(LtlOracleError):
    exit_code = 7


class MissingTimingError(LtlOracleError):
    exit_code = 3
