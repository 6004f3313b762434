"""Error messages."""

import sys
import traceback
from typing import NoReturn


class PBallError(Exception):
    exit_code = 1


class DomainError(PBallError, ValueError):
    exit_code = 2


class PoleError(DomainError, ZeroDivisionError):
    pass


class InverterError(PBallError, ArithmeticError):
    def __init__(self, message: str, diagnostics: dict[str, object] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def __str__(self):
        if not self.diagnostics:
            return super().__str__()
        details = ", ".join(f"{key}={value!r}" for key, value in self.diagnostics.items())
        return f"{super().__str__()} ({details})"


class ContinuedFractionError(InverterError):
    pass


class QuadratureError(PBallError, ArithmeticError):
    pass


class TailBoundError(QuadratureError):
    pass


class SeriesError(PBallError, ArithmeticError):
    pass


class ProfileError(PBallError):
    exit_code = 2


def set_text_message(message: str, details: str = ""):
    print(f"pball: {message}", file=sys.stderr)
    if details:
        print(details, file=sys.stderr)


def invalid_parameter(name: str, value: object, constraint: str):
    """@return: A `DomainError` ready to be raised, describing the rejected value."""
    return DomainError(f"{name} must satisfy {constraint}, got {value!r}")


def quadrature_not_converged(command: str, err_est: float, tol: float):
    set_text_message(
        f"{command}: quadrature did not reach the requested tolerance "
        + f"(error estimate {err_est:.3g} > tol {tol:.3g}). The partial result was written."
    )


def verification_failed(suites: list[str]):
    set_text_message("Verification failed for suite(s): " + ", ".join(suites))


def invalid_profile(path: str, reason: str = ""):
    """@return: A `ProfileError` ready to be raised. It is printed once, by the top-level handler."""
    return ProfileError(f"Invalid run profile {path!r}." + (f" {reason}" if reason else ""))


def numeric_failure(exception: PBallError):
    set_text_message(str(exception))


def exception_traceback(exception: BaseException, message: str = ""):
    if not message:
        message = "pball encountered an unhandled exception." + REPORT_ISSUE_MESSAGE
    set_text_message(
        message,
        "".join(traceback.format_exception(None, exception, exception.__traceback__)),
    )


def handle_top_level_exceptions(exception: Exception) -> NoReturn:
    if isinstance(exception, PBallError):
        numeric_failure(exception)
        sys.exit(exception.exit_code)
    exception_traceback(exception)
    sys.exit(1)


REPORT_ISSUE_MESSAGE = (
    " Please report it with the command you ran and the entire error message below."
)
