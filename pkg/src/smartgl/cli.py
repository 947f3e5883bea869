"""
Command line interface: ``smartgl <command> [options]``.

Exit codes: 0 success, 1 mathematical failure (failed check, singular Q where
a nonsingular one is needed, no reduction witness), 2 usage or parse error.
Results go to stdout; logs and error messages go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any, TextIO

from . import __version__
from .action import ModuleSpec, Mutation, act, act_parabolic, twist
from .ascii_table import render_ascii_table
from .config import SmartOptions, check_bounds, load_matrix, memo_size_from_env
from .decorators import SUITES
from .errors import (
    ExprError,
    InvalidParameterError,
    NonsingularMatrixError,
    NotParabolicError,
    RankMismatchError,
    SingularMatrixError,
    UsageError,
)
from .expr import encode_json, parse_gl2n, parse_uea, print_gl2n, print_normal
from .matrices import gelfand, render_numeric
from .pbw import configure_memo
from .verify import (
    VerificationReport,
    reduce_to_constant,
    run_suite,
    socle_filtration,
    socle_formula,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (UsageError, ExprError, InvalidParameterError, RankMismatchError)
MATH_ERRORS = (SingularMatrixError, NonsingularMatrixError, NotParabolicError)

MAX_FAILURES_SHOWN = 10


def _emit(options: SmartOptions, out: TextIO, pretty: str, data: Any) -> None:
    if options.output == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(pretty + "\n")


def cmd_act(options: SmartOptions, out: TextIO) -> int:
    """Print X·a; elements of A + B use the parabolic action, valid for singular Q."""
    n = options.n
    x = parse_gl2n(options.element, n)
    a = parse_uea(options.vector, n)
    spec = ModuleSpec.create(n, options.q)
    result = act_parabolic(spec, x, a) if x.is_parabolic() else act(spec, x, a)
    _emit(
        options,
        out,
        print_normal(result),
        {
            "element": print_gl2n(x),
            "vector": print_normal(a),
            "result": print_normal(result),
            "terms": encode_json(result),
        },
    )
    return EXIT_OK


def _report_table(reports: Sequence[VerificationReport]) -> str:
    summary = {
        "title": "verification",
        "headers": [
            {"name": "suite"},
            {"name": "checks", "type": "int", "align": "right"},
            {"name": "failures", "type": "int", "align": "right"},
            {"name": "passed", "type": "bool"},
        ],
        "rows": [[r.suite, r.attempted, len(r.failures), r.passed] for r in reports],
    }
    parts = [render_ascii_table(summary)]
    for report in reports:
        if report.failures:
            shown = report.failures[:MAX_FAILURES_SHOWN]
            title = f"{report.suite}: first {len(shown)} of {len(report.failures)} failures"
            parts.append(
                render_ascii_table(
                    {
                        "title": title,
                        "headers": [{"name": "input"}, {"name": "expected"}, {"name": "got"}],
                        "rows": [[f.input, f.expected, f.got] for f in shown],
                    }
                )
            )
        if report.notes:
            parts.append(f"{report.suite} notes: {json.dumps(report.notes)}")
    return "\n".join(parts)


def cmd_verify(options: SmartOptions, out: TextIO) -> int:
    """Run the selected suite (or all applicable ones); exit 0 iff every check passed."""
    if options.mutate is not None:
        options.mutate = Mutation(options.mutate)
    reports = run_suite(options.suite, options)
    _emit(options, out, _report_table(reports), [r.to_dict() for r in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


def cmd_socle(options: SmartOptions, out: TextIO) -> int:
    n, k_max = options.n, options.k
    filtration = socle_filtration(n, options.q, k_max)
    formula = [socle_formula(n, k) for k in range(1, k_max + 1)]
    table = render_ascii_table(
        {
            "title": f"socle layers, n={n}",
            "headers": [
                {"name": "k", "type": "int", "align": "right"},
                {"name": "layer", "type": "int", "align": "right"},
                {"name": "cumulative", "type": "int", "align": "right"},
                {"name": "C(n²+k−2,k−1)", "type": "int", "align": "right"},
            ],
            "rows": [
                [k, layer, total, expected]
                for k, layer, total, expected in zip(
                    range(1, k_max + 1), filtration.layers, filtration.cumulative, formula
                )
            ],
        }
    )
    _emit(
        options,
        out,
        f"layers {filtration.layers}\n{table}",
        {"layers": filtration.layers, "cumulative": filtration.cumulative, "formula": formula},
    )
    return EXIT_OK if filtration.layers == formula else EXIT_FAILURE


def cmd_reduce(options: SmartOptions, out: TextIO) -> int:
    """Reduce a vector of M_I to a constant with the B_p operator word."""
    f = parse_uea(options.vector, options.n)
    reduction = reduce_to_constant(f, options.n)
    _emit(
        options,
        out,
        f"scalar {reduction.scalar}\nword {reduction.word or '1'}",
        reduction.to_dict(),
    )
    return EXIT_OK if reduction.is_witness else EXIT_FAILURE


def cmd_gelfand(options: SmartOptions, out: TextIO) -> int:
    invariant = gelfand(options.n, options.k)
    _emit(
        options,
        out,
        print_normal(invariant),
        {"k": options.k, "element": print_normal(invariant), "terms": encode_json(invariant)},
    )
    return EXIT_OK


def cmd_twist(options: SmartOptions, out: TextIO) -> int:
    """Print φ_S(X) = (A, B.S^{-1}; S.C, S.D.S^{-1})."""
    s = load_matrix(options.s, options.n)
    image = twist(s, parse_gl2n(options.element, options.n))
    a, b, c, d = image.blocks()
    _emit(
        options,
        out,
        print_gl2n(image),
        {
            "element": print_gl2n(image),
            "blocks": {
                "A": render_numeric(a),
                "B": render_numeric(b),
                "C": render_numeric(c),
                "D": render_numeric(d),
            },
        },
    )
    return EXIT_OK


COMMANDS: dict[str, Callable[[SmartOptions, TextIO], int]] = {
    "act": cmd_act,
    "verify": cmd_verify,
    "socle": cmd_socle,
    "reduce": cmd_reduce,
    "gelfand": cmd_gelfand,
    "twist": cmd_twist,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank n of gl_n (default 1)")
    common.add_argument("--q", help="Q as inline JSON or @path, entries int or 'p/q'")
    common.add_argument("--output", choices=["pretty", "json"])
    common.add_argument(
        "--allow-large",
        action="store_true",
        default=None,
        help="lift the n ≤ 3, degree ≤ 4 limits",
    )
    common.add_argument("-v", "--verbose", action="count", help="-v info, -vv debug")

    parser = argparse.ArgumentParser(
        prog="smartgl", description="Exact computations in the gl_2n-modules M_Q on U(gl_n)."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_act = sub.add_parser("act", parents=[common], help="act with a gl_2n element on a vector")
    p_act.add_argument("--element", required=True)
    p_act.add_argument("--vector", default="1")

    p_verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    p_verify.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    p_verify.add_argument("--deg", type=int, help="monomial degree bound")
    p_verify.add_argument("--k", type=int, help="order bound (m_max, k_max)")
    p_verify.add_argument("--mutate", choices=[m.value for m in Mutation])

    p_socle = sub.add_parser("socle", parents=[common], help="socle layer dimensions")
    p_socle.add_argument("--k", type=int)

    p_reduce = sub.add_parser(
        "reduce", parents=[common], help="reduce a vector of M_I to a constant"
    )
    p_reduce.add_argument("--vector", required=True)

    p_gelfand = sub.add_parser("gelfand", parents=[common], help="the Gelfand invariant tr(F^k)")
    p_gelfand.add_argument("--k", type=int)

    p_twist = sub.add_parser("twist", parents=[common], help="apply the automorphism φ_S")
    p_twist.add_argument("--s", required=True)
    p_twist.add_argument("--element", required=True)
    return parser


def configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Entry point; returns the exit code."""
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    options = SmartOptions(vars(args), ignore_none=True)
    configure_logging(options.verbose)
    logger.debug("options: %s", options.as_dict())
    try:
        check_bounds(options)
        configure_memo(memo_size_from_env())
        if options.q is not None:
            options.q = load_matrix(options.q, options.n)
        return COMMANDS[args.command](options, out)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MATH_ERRORS as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAILURE
