# jetvar/cli.py
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from jetvar import config
from jetvar.boundary import pullback
from jetvar.cdiff import PeelStrategy
from jetvar.errors import JetError
from jetvar.expr import JetSpace, World, parse
from jetvar.schemas import ProblemSpec, PullbackOut, Report, build_report, load_problem
from jetvar.suites import run_checks
from jetvar.variational import relative_euler

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


# ---------- Shared helpers ----------


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _spec(args: argparse.Namespace) -> ProblemSpec:
    if not args.problem:
        raise JetError("--problem is required for this command")
    return load_problem(args.problem)


def _strategy(args: argparse.Namespace, spec: ProblemSpec) -> PeelStrategy:
    return PeelStrategy(args.strategy or spec.options.strategy)


def _probes(args: argparse.Namespace, spec: ProblemSpec) -> int:
    return args.probes if args.probes is not None else spec.options.probes


def _seed(args: argparse.Namespace, spec: ProblemSpec) -> int:
    return args.seed if args.seed is not None else spec.options.seed


def _emit_json(model) -> None:
    print(model.model_dump_json(indent=2))


def _print_el(report: Report) -> None:
    print("Euler-Lagrange equations:")
    for e in report.el:
        print(f"  {e} = 0")


def _print_theta(report: Report, n: int) -> None:
    print(f"Natural boundary conditions on x_n = 0 (x{n} = 0):")
    if not report.theta:
        print("  (none)")
    for t in report.theta:
        print(f"  (k={t.k}, i={t.i})  {t.expr} = 0")


def _print_green(report: Report) -> None:
    print("Adjoint value h:")
    for k, h in enumerate(report.green.h, start=1):
        print(f"  h_{k} = {h}")
    print("Boundary current:")
    for i, eta in enumerate(report.green.currents, start=1):
        if not eta:
            print(f"  eta_{i}: 0")
        for c in eta:
            sigma = ",".join(str(s) for s in c.sigma)
            print(f"  eta_{i}: (k={c.k}, sigma=({sigma}))  {c.expr}")


def _print_checks(report: Report) -> None:
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {c.name}  residual={c.residual:.3g}")


# ---------- Subcommands ----------


def cmd_el(args: argparse.Namespace) -> int:
    spec = _spec(args)
    report = build_report(relative_euler(spec.parsed(), _strategy(args, spec)), with_theta=False)
    if args.format == "json":
        _emit_json(report)
    else:
        _print_el(report)
    return EXIT_OK


def cmd_rel_euler(args: argparse.Namespace) -> int:
    spec = _spec(args)
    report = build_report(relative_euler(spec.parsed(), _strategy(args, spec)))
    if args.format == "json":
        _emit_json(report)
    else:
        _print_el(report)
        _print_theta(report, spec.n)
    return EXIT_OK


def cmd_green(args: argparse.Namespace) -> int:
    spec = _spec(args)
    report = build_report(relative_euler(spec.parsed(), _strategy(args, spec)), with_green=True)
    if args.format == "json":
        _emit_json(report)
    else:
        _print_green(report)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    spec = _spec(args)
    f, strategy = spec.parsed(), _strategy(args, spec)
    result = relative_euler(f, strategy)
    outcomes = run_checks(f, strategy, probes=_probes(args, spec), seed=_seed(args, spec), result=result)
    report = build_report(result, outcomes=outcomes)
    if args.format == "json":
        _emit_json(report)
    else:
        _print_checks(report)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_pullback(args: argparse.Namespace) -> int:
    if args.problem:
        space = load_problem(args.problem).space
    elif args.n is not None and args.m is not None:
        space = JetSpace(args.n, args.m)
    else:
        raise JetError("pullback needs --problem or both --n and --m")
    out = PullbackOut(expr=args.expr, pullback=str(pullback(parse(args.expr, space, World.INTERIOR))))
    if args.format == "json":
        _emit_json(out)
    else:
        print(out.pullback)
    return EXIT_OK


def cmd_schema(args: argparse.Namespace) -> int:
    print(json.dumps(Report.model_json_schema(), indent=2, sort_keys=True))
    return EXIT_OK


# ---------- Parser ----------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", type=str, default=None, help="Problem JSON file")
    common.add_argument(
        "--strategy", choices=[s.value for s in PeelStrategy], default=None, help="Peel strategy"
    )
    common.add_argument(
        "--probes", type=_positive_int, default=None, help=f"Random probe points (default {config.DEFAULT_PROBES})"
    )
    common.add_argument("--seed", type=int, default=None, help=f"Random seed (default {config.DEFAULT_SEED})")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=config.LOG_LEVEL)

    p = argparse.ArgumentParser(prog="jetvar", description="Relative variational calculus on jet spaces")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("el", parents=[common], help="Euler-Lagrange equations")
    sp.set_defaults(func=cmd_el)

    sp = sub.add_parser(
        "rel-euler", parents=[common], help="EL equations and natural boundary conditions on x_n = 0"
    )
    sp.set_defaults(func=cmd_rel_euler)

    sp = sub.add_parser("green", parents=[common], help="Green decomposition of the linearization")
    sp.set_defaults(func=cmd_green)

    sp = sub.add_parser("check", parents=[common], help="Run the invariant suite")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("pullback", parents=[common], help="Pull an expression back to x_n = 0")
    sp.add_argument("expr", type=str)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--m", type=int, default=None)
    sp.set_defaults(func=cmd_pullback)

    sp = sub.add_parser("schema", help="Print the JSON schema of reports")
    sp.set_defaults(func=cmd_schema, log_level=config.LOG_LEVEL)

    return p


def main(argv: Optional[List[str]] = None) -> int:
    p = build_parser()
    args = p.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    logger.debug("running %s", args.cmd)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: invalid problem: {exc}", file=sys.stderr)
    except (JetError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
