"""Exception types shared across the package.

Each class carries the process exit code the CLI maps it to.
"""


class RootdistError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InvalidArgumentError(RootdistError, ValueError):
    """A caller-supplied value violates a documented precondition."""

    exit_code = 2


class UnsupportedInputError(RootdistError):
    """The input is well formed but outside what the implementation handles."""

    exit_code = 3


class ResourceLimitError(RootdistError):
    """A built-in enumeration or memory guard tripped."""

    exit_code = 1


class AdmissibilityError(UnsupportedInputError):
    """A modulus shares a prime with eta times the discriminant.

    Carries the AdmissibilityReport naming the offending primes.
    """

    def __init__(self, report, message: str | None = None):
        self.report = report
        if message is None:
            message = (
                f"modulus {report.modulus} is not admissible: "
                f"offending primes {list(report.offending_primes)}"
            )
        super().__init__(message)
