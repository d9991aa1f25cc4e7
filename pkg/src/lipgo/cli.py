"""Command line: ``lipgo solve``, ``lipgo bench`` and ``lipgo oracle``."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .bench import fill_known_constants, render_report, run_bench
from .core import ConfigurationError, Estimator, LipgoError, RunStatus, Scheme, parse_label
from .methods import method_from_label
from .oracle import DEFAULT_GRID, report as oracle_report
from .testbed.fixtures import FixtureError, load_fixture, shipped_fixture_paths
from .testbed.pinter import pinter_problem, pinter_suite

EXIT_OK, EXIT_RUN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _problem_from_args(args):
    if args.problem is not None:
        return load_fixture(args.problem)
    return pinter_problem(args.pinter)


def _add_problem_args(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--problem", type=Path, help="fixture file")
    group.add_argument("--pinter", type=float, metavar="X_STAR", help="randomized-class member with this minimizer")


def _add_accuracy_args(parser):
    parser.add_argument("--eps", type=float, default=1e-4, help="stopping accuracy, times (b-a) unless --eps-absolute")
    parser.add_argument("--eps-absolute", action="store_true")
    parser.add_argument("--delta", type=float, default=None, help="local-improvement width (default: eps)")
    parser.add_argument("--xi", type=float, default=1e-8)
    parser.add_argument("--max-trials", type=int, default=10**6)


def cmd_solve(args) -> int:
    problem = _problem_from_args(args)
    scheme, estimator, _ = parse_label(args.method)
    if args.pinter is not None and estimator is Estimator.KNOWN_CONSTANT:
        # the randomized class ships no constants; take them from the oracle
        problem = fill_known_constants([problem], args.oracle_n)[0]
    method = method_from_label(
        args.method,
        r=args.r if estimator is not Estimator.KNOWN_CONSTANT else 1.1,
        eps=args.eps,
        eps_relative=not args.eps_absolute,
        delta=args.delta,
        xi=args.xi,
        max_trials=args.max_trials,
    )
    result = method.solve(problem)
    if result.status is RunStatus.REJECTED:
        raise UsageError(f"{method.label} cannot run on {problem.name}: {result.reason}")
    print(f"problem   {problem.name}")
    print(f"method    {result.method_label}")
    print(f"n_trials  {result.n_trials}")
    print(f"best_x    {result.best_x!r}")
    print(f"best_f    {result.best_f!r}")
    print(f"status    {result.status.value}")
    if args.trace is not None:
        with open(args.trace, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            with_dz = scheme is Scheme.GS_D
            writer.writerow(["k", "x", "z", "dz"] if with_dz else ["k", "x", "z"])
            for k, trial in enumerate(result.trials, start=1):
                row = [k, repr(trial.x), repr(trial.z)]
                if with_dz:
                    row.append(repr(trial.dz))
                writer.writerow(row)
    return EXIT_OK if result.status is RunStatus.CONVERGED else EXIT_RUN


def _suite(args):
    if args.suite == "pinter":
        return [inst.problem for inst in pinter_suite(args.seed, args.count)]
    paths = args.fixture or shipped_fixture_paths()
    return [load_fixture(p) for p in paths]


def cmd_bench(args) -> int:
    if args.r_auto and args.r is not None:
        raise UsageError("--r and --r-auto are mutually exclusive")
    if args.parallel < 1:
        raise UsageError("--parallel must be at least 1")
    methods = [m for m in args.methods.split(",") if m.strip()]
    report = run_bench(
        _suite(args),
        methods,
        eps=args.eps,
        eps_relative=not args.eps_absolute,
        r=args.r if args.r is not None else 1.1,
        r_auto=args.r_auto,
        delta=args.delta,
        xi=args.xi,
        max_trials=args.max_trials,
        parallel=args.parallel,
        oracle_n=args.oracle_n,
    )
    text = render_report(report, args.format)
    if args.out is not None:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.all_success else EXIT_RUN


def cmd_oracle(args) -> int:
    rep = oracle_report(_problem_from_args(args), args.n)
    print(f"grid_n  {rep.grid_n}")
    print(f"x_min   {rep.x_min!r}")
    print(f"f_min   {rep.f_min!r}")
    print(f"L_hat   {rep.L_hat!r}")
    print(f"M_hat   {rep.M_hat!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lipgo", description="Univariate Lipschitz global optimization")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one method on one problem")
    _add_problem_args(solve)
    solve.add_argument("--method", required=True, help="PKC, GE, LT, PKC_LI, ..., DLT_LI")
    solve.add_argument("--r", type=float, default=1.1)
    _add_accuracy_args(solve)
    solve.add_argument("--trace", type=Path, help="write the trials as CSV")
    solve.add_argument("--oracle-n", type=int, default=DEFAULT_GRID)
    solve.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="run a method x problem matrix")
    bench.add_argument("--suite", choices=("pinter", "fixtures"), default="pinter")
    bench.add_argument("--seed", type=int, default=2024)
    bench.add_argument("--count", type=int, default=100)
    bench.add_argument("--fixture", type=Path, action="append", help="fixture file (repeatable; --suite fixtures)")
    bench.add_argument("--methods", required=True, help="comma-separated labels")
    bench.add_argument("--r", type=float, default=None)
    bench.add_argument("--r-auto", action="store_true", help="raise r by 0.1 for failing problems")
    _add_accuracy_args(bench)
    bench.add_argument("--format", choices=("csv", "md"), default="csv")
    bench.add_argument("--out", type=Path)
    bench.add_argument("--parallel", type=int, default=1)
    bench.add_argument("--oracle-n", type=int, default=DEFAULT_GRID)
    bench.set_defaults(func=cmd_bench)

    oracle = sub.add_parser("oracle", help="grid minimum and sampled Lipschitz constants")
    _add_problem_args(oracle)
    oracle.add_argument("--n", type=int, default=DEFAULT_GRID)
    oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ConfigurationError, FixtureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LipgoError as exc:
        print(f"run error: {exc}", file=sys.stderr)
        return EXIT_RUN


if __name__ == "__main__":
    sys.exit(main())
