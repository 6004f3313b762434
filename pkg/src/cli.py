"""
Command-line surface of pball.

Every command builds an `OutputRecord`; `run` writes it and maps its status to the exit code.
Standard output only ever carries the record.
"""

import argparse
from collections.abc import Callable, Sequence

import error_messages
from ball import (
    Suite,
    ball_integral,
    ball_limit_table,
    phi_limit_check,
    phi_quad,
    verify_all,
    verify_suite,
)
from error_messages import DomainError, invalid_parameter
from output_records import OutputRecord
from ptrig import PExponent, arcsin_p_signed, cos_p, sin_p, sinc_p, tan_p
from series import assemble_expansion, evaluate_expansion
from user_profile import OUTPUT_FORMATS, RunProfileDict, load_profile, save_profile
from utils import debug_log, get_version

EVAL_FUNCTIONS: dict[str, Callable[[PExponent, float], object]] = {
    "sinp": sin_p,
    "cosp": cos_p,
    "tanp": tan_p,
    "sincp": sinc_p,
    "arcsinp": arcsin_p_signed,
}
"""Functions of (p, x). `pip` takes no argument and is handled apart."""
MAX_EXPANSION_ORDER = 6

EXIT_OK = 0
EXIT_FAILURE = 1


def _q_list(text: str):
    try:
        values = [float(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of numbers") from None
    if not values:
        raise argparse.ArgumentTypeError("q list is empty")
    return values


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="Output format (default: csv)")
    common.add_argument("--output", default="", metavar="PATH", help="Write to PATH instead of stdout; .xlsx writes Excel")
    common.add_argument("--profile", default="", metavar="PATH", help="TOML run profile merged over the defaults")
    common.add_argument("--save-profile", default="", metavar="PATH", help="Write the effective run profile to PATH")
    common.add_argument("--verbose", action="store_true", help="Log debug diagnostics to stderr")

    parser = argparse.ArgumentParser(
        prog="pball",
        description="Generalized p-trigonometric functions and Ball's integral I_p(q).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    evaluate = commands.add_parser(
        "eval",
        parents=[common],
        help="Evaluate a p-trigonometric function",
        description="Columns: function, p, x, value.",
    )
    evaluate.add_argument("function", choices=[*EVAL_FUNCTIONS, "pip"])
    evaluate.add_argument("--p", type=float, required=True)
    evaluate.add_argument("--x", type=float, default=None)

    integral = commands.add_parser(
        "integral",
        parents=[common],
        help="I_p(q), or φ_p(n, q) with --n",
        description="Columns: p, q, n, raw, scaled, err_est, tail_remainder, subdivisions, converged. "
        + "scaled is q^(n + 1/p)·raw.",
    )
    integral.add_argument("--p", type=float, required=True)
    integral.add_argument("--q", type=float, required=True)
    integral.add_argument("--n", type=int, default=0)
    integral.add_argument("--tol", type=float, default=None)

    limit_table = commands.add_parser(
        "limit-table",
        parents=[common],
        help="I_p(q) against its q → ∞ limit",
        description="Columns: q, integral, limit, gap, scaled_gap, predicted_g1.",
    )
    limit_table.add_argument("--p", type=float, required=True)
    limit_table.add_argument("--q-list", type=_q_list, default=None, metavar="Q1,Q2,...")
    limit_table.add_argument("--tol", type=float, default=None)

    expand = commands.add_parser(
        "expand",
        parents=[common],
        help="Asymptotic expansion of I_p(q) in 1/q",
        description="Columns: m, g_m, partial_sum, reference, residual.",
    )
    expand.add_argument("--p", type=float, required=True)
    expand.add_argument("--order", type=int, default=2)
    expand.add_argument("--q", type=float, required=True)
    expand.add_argument("--tol", type=float, default=None)

    verify = commands.add_parser(
        "verify",
        parents=[common],
        help="Run an inequality or identity suite",
        description="Columns: suite, checked, max_slack, violations, near_violations, status.",
    )
    verify.add_argument("--suite", choices=list(Suite), required=True)
    verify.add_argument("--p", type=float, default=2.0)
    verify.add_argument("--samples", type=int, default=None)

    phi_limit = commands.add_parser(
        "phi-limit",
        parents=[common],
        help="q^(n + 1/p)·φ_p(n, q) against both candidate limits",
        description="Columns: q, phi, scaled, printed_constant, derivative_constant.",
    )
    phi_limit.add_argument("--p", type=float, required=True)
    phi_limit.add_argument("--n", type=int, required=True)
    phi_limit.add_argument("--q-list", type=_q_list, default=None, metavar="Q1,Q2,...")

    return parser


def parse_arguments(argv: Sequence[str] | None = None):
    return build_parser().parse_args(argv)


def effective_profile(arguments: argparse.Namespace):
    """The run profile, with explicit flags taking precedence over the profile file."""
    profile = load_profile(arguments.profile)
    overrides = {
        "tol": getattr(arguments, "tol", None),
        "samples": getattr(arguments, "samples", None),
        "q_list": getattr(arguments, "q_list", None),
        "output_format": arguments.format,
    }
    for key, value in overrides.items():
        if value is not None:
            profile[key] = value  # pyright: ignore[reportGeneralTypeIssues]
    return profile


# region Commands


def cmd_eval(function: str, p: float, x: float | None):
    exponent = PExponent(p)
    if function == "pip":
        value = exponent.pi_p
    else:
        if x is None:
            raise invalid_parameter("--x", x, f"a number for {function}")
        value = EVAL_FUNCTIONS[function](exponent, x)
    return OutputRecord(
        "eval",
        {"function": function, "p": p, "x": x},
        [{"function": function, "p": p, "x": "" if x is None else x, "value": value}],
        status="info",
    )


def cmd_integral(p: float, q: float, tol: float, n: int = 0, *, profile: RunProfileDict | None = None):
    profile = profile or load_profile()
    if n < 0:
        raise invalid_parameter("--n", n, "n >= 0")
    exponent = PExponent(p)
    if n == 0:
        integral = ball_integral(
            exponent, q, tol, max_doublings=profile["max_doublings"], limit=profile["subdivision_limit"]
        )
        result = integral.quad
        scaled = integral.value
    else:
        result = phi_quad(
            exponent, n, q, tol, max_doublings=profile["max_doublings"], limit=profile["subdivision_limit"]
        )
        scaled = q ** (n + 1.0 / exponent.p) * result.value

    reached = result.converged and result.total_error <= tol
    if not reached:
        error_messages.quadrature_not_converged("integral", result.total_error, tol)
    return OutputRecord(
        "integral",
        {"p": p, "q": q, "n": n, "tol": tol},
        [{
            "p": p,
            "q": q,
            "n": n,
            "raw": result.value,
            "scaled": scaled,
            "err_est": result.err_est,
            "tail_remainder": result.tail_remainder,
            "subdivisions": result.subdivisions,
            "converged": result.converged,
        }],
        status="info" if reached else "fail",
    )


def cmd_limit_table(p: float, q_list: Sequence[float], tol: float, *, profile: RunProfileDict | None = None):
    profile = profile or load_profile()
    if any(not q > 1 for q in q_list):
        raise invalid_parameter("--q-list", list(q_list), "all q > 1")
    rows, converged, worst_error = ball_limit_table(
        p, q_list, tol, max_doublings=profile["max_doublings"], limit=profile["subdivision_limit"]
    )
    if not converged:
        error_messages.quadrature_not_converged("limit-table", worst_error, tol)
    return OutputRecord(
        "limit-table",
        {"p": p, "q_list": list(q_list), "tol": tol},
        rows,
        status="info" if converged else "fail",
    )


def cmd_expand(p: float, order: int, q: float, tol: float, *, series_order: int = 12):
    if not 0 <= order <= MAX_EXPANSION_ORDER:
        raise invalid_parameter("--order", order, f"0 <= order <= {MAX_EXPANSION_ORDER}")
    if not q > 1:
        raise invalid_parameter("--q", q, "q > 1")
    expansion = assemble_expansion(p, max(series_order, 2 * order))
    reference = ball_integral(p, q, tol)
    rows = []
    for m in range(order + 1):
        partial = evaluate_expansion(expansion, q, m)
        rows.append({
            "m": m,
            "g_m": expansion.regrouped[m],
            "partial_sum": partial,
            "reference": reference.value,
            "residual": reference.value - partial,
        })
    converged = reference.quad.converged
    return OutputRecord(
        "expand",
        {"p": p, "order": order, "q": q, "tol": tol, "series_order": expansion.order},
        rows,
        status="info" if converged else "fail",
    )


def cmd_verify(suite: str, p: float, samples: int):
    if suite not in Suite:
        raise invalid_parameter("--suite", suite, "one of " + ", ".join(Suite))
    reports = verify_all(p, samples) if suite == Suite.ALL else [verify_suite(suite, p, samples)]
    failed = [report.suite for report in reports if not report.passed]
    if failed:
        error_messages.verification_failed(failed)
    return OutputRecord(
        "verify",
        {"suite": suite, "p": p, "samples": samples},
        [report.to_row() for report in reports],
        status="fail" if failed else "pass",
    )


def cmd_phi_limit(p: float, n: int, q_list: Sequence[float]):
    if n < 0:
        raise invalid_parameter("--n", n, "n >= 0")
    report = phi_limit_check(p, n, q_list)
    rows = [
        {
            "q": q,
            "phi": value,
            "scaled": scaled,
            "printed_constant": report.printed_constant,
            "derivative_constant": report.derivative_constant,
        }
        for q, value, scaled in zip(report.q_list, report.values, report.scaled, strict=True)
    ]
    return OutputRecord(
        "phi-limit",
        {"p": p, "n": n, "q_list": list(q_list), "approaches": report.approaches},
        rows,
        status="info" if report.converged else "fail",
    )


# endregion Commands


def dispatch(arguments: argparse.Namespace, profile: RunProfileDict):
    match arguments.command:
        case "eval":
            return cmd_eval(arguments.function, arguments.p, arguments.x)
        case "integral":
            return cmd_integral(arguments.p, arguments.q, profile["tol"], arguments.n, profile=profile)
        case "limit-table":
            return cmd_limit_table(arguments.p, profile["q_list"], profile["tol"], profile=profile)
        case "expand":
            return cmd_expand(
                arguments.p, arguments.order, arguments.q, profile["tol"], series_order=profile["series_order"]
            )
        case "verify":
            return cmd_verify(arguments.suite, arguments.p, profile["samples"])
        case "phi-limit":
            return cmd_phi_limit(arguments.p, arguments.n, profile["q_list"])
        case _:
            raise KeyError(f"{arguments.command!r} is not a valid command")


def run(arguments: argparse.Namespace):
    """@return: The exit code: 0 on success, 1 on a failed check or missed tolerance."""
    profile = effective_profile(arguments)
    if arguments.save_profile:
        save_profile(profile, arguments.save_profile)
    debug_log(f"pball {arguments.command} with profile {profile}")

    record = dispatch(arguments, profile)
    try:
        record.export(profile["output_format"], arguments.output)
    except OSError as exception:
        raise DomainError(f"cannot write {arguments.output!r}: {exception}") from exception
    return EXIT_FAILURE if record.status == "fail" else EXIT_OK
