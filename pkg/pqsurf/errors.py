# Exception hierarchy for pqsurf

# Author  : pqsurf contributors
# Date    : 2024-09-02
# License : BSD-3-Clause

from pqsurf.params import ExitCode


class PQSurfError(Exception):
    """
    Base class for every error raised by pqsurf.

    ### Properties:
        `exit_code: int` - Process exit code the CLI uses for this error\n
    """

    exit_code = 1


class ValidationError(PQSurfError, ValueError):
    """Input that cannot describe a group, element, system or job."""

    exit_code = ExitCode.VALIDATION


class ResourceCapError(PQSurfError, RuntimeError):
    """A configured order, node or coset cap was exceeded."""

    exit_code = ExitCode.RESOURCE


class InconsistencyError(PQSurfError, ArithmeticError):
    """An identity that holds for valid data failed (non-integral genus, Noether failure, ...)."""

    exit_code = ExitCode.INCONSISTENCY


class DecompositionError(ValidationError):
    """
    A system element is not conjugate to a power of any assigned presentation generator.

    ### Properties:
        `index: int` - 0-based position of the offending system element\n
    """

    def __init__(self, index: int, message: str) -> None:
        super().__init__(message)
        self.index = index
