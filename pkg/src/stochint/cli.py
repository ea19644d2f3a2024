"""Batch command-line entry point.

Three subcommands: ``verify`` runs the exact/randomized suites, ``mc`` the
statistical Monte Carlo checks, ``refine`` the grid-refinement study.  Every
run writes a deterministic JSON report (stdout or ``--out``); the exit code
is 0 only when every check passed, 2 on usage errors.  Wall time goes to
stderr so reports stay byte-identical for identical (seed, flags).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import montecarlo, suites
from .grid import uniform_grid
from .reports import SuiteReport, render_json

SUITES = ("hstoch", "fock-ito", "bernoulli", "all")
MODELS = ("brownian", "poisson")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _tolerance(text: str) -> tuple[str, float]:
    name, _, raw = text.partition("=")
    if not raw:
        raise argparse.ArgumentTypeError("tolerance overrides look like NAME=VALUE")
    if name not in suites.DEFAULT_TOLERANCES:
        known = ", ".join(sorted(suites.DEFAULT_TOLERANCES))
        raise argparse.ArgumentTypeError(f"unknown tolerance {name!r}; known: {known}")
    return name, float(raw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stochint",
        description="verification suites for grid-based stochastic integrals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run exact/randomized verification suites")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("--cells", type=_positive_int, default=4, help="max cells per random grid")
    verify.add_argument("--degree", type=_positive_int, default=3, help="max component degree")
    verify.add_argument("--trials", type=_positive_int, default=200, help="randomized trials")
    verify.add_argument("--seed", type=int, default=0, help="master seed")
    verify.add_argument("--tol", type=_tolerance, action="append", default=[], metavar="NAME=VALUE")
    verify.add_argument("--out", help="write the JSON report here instead of stdout")
    verify.add_argument("--input", help="JSON file with a serialized martingale and process (hstoch suite)")

    mc = sub.add_parser("mc", help="Monte Carlo checks against closed-form references")
    mc.add_argument("--model", choices=MODELS, default="brownian")
    mc.add_argument("--cells", type=_positive_int, default=64)
    mc.add_argument("--paths", type=_positive_int, default=100_000)
    mc.add_argument("--seed", type=int, required=True)
    mc.add_argument("--intensity", type=float, default=1.0, help="poisson rate")
    mc.add_argument("--csv", help="also export the path ensemble as CSV (path, cell, increment)")
    mc.add_argument("--out", help="write the JSON report here instead of stdout")

    refine = sub.add_parser("refine", help="grid-refinement convergence study")
    refine.add_argument("--cells", type=_positive_int, default=2, help="coarsest grid size")
    refine.add_argument("--levels", type=_positive_int, default=6, help="number of doublings (>= 2)")
    refine.add_argument("--seed", type=int, default=0)
    refine.add_argument("--out", help="write the JSON report here instead of stdout")

    return parser


def _emit(report: SuiteReport, out: str | None) -> int:
    text = render_json(report)
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    failed = report.failures()
    status = "PASS" if not failed else f"FAIL ({len(failed)}/{len(report.checks)} checks)"
    wall = f"{report.wall_time_s:.3f}s" if report.wall_time_s is not None else "n/a"
    print(f"{report.suite}: {status} in {wall}", file=sys.stderr)
    for check in failed:
        print(f"  failed: {check.name} lhs={check.lhs!r} rhs={check.rhs!r} tol={check.tolerance!r}", file=sys.stderr)
    return 0 if not failed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "verify":
        tolerances = dict(args.tol)
        input_data = None
        if args.input:
            if args.suite not in ("hstoch", "all"):
                parser.error("--input only applies to the hstoch suite")
            with open(args.input) as handle:
                input_data = json.load(handle)
        if args.suite == "hstoch":
            report = suites.verify_operator_suite(
                cells=args.cells,
                trials=args.trials,
                transport_trials=min(200, args.trials),
                seed=args.seed,
                tolerances=tolerances,
                input_data=input_data,
            )
        elif args.suite == "fock-ito":
            report = suites.verify_fock_ito_suite(
                cells=args.cells,
                degree=args.degree,
                trials=args.trials,
                bridge_trials=min(100, args.trials),
                seed=args.seed,
                tolerances=tolerances,
            )
        elif args.suite == "bernoulli":
            report = suites.verify_bernoulli_suite(
                cells=min(args.cells, 5), trials=args.trials, seed=args.seed, tolerances=tolerances
            )
        else:
            report = suites.verify_all(
                cells=args.cells,
                degree=args.degree,
                trials=args.trials,
                seed=args.seed,
                tolerances=tolerances,
            )
            if input_data is not None:
                extra = suites.verify_operator_suite(
                    cells=args.cells,
                    trials=1,
                    transport_trials=0,
                    seed=args.seed,
                    tolerances=tolerances,
                    input_data=input_data,
                )
                for check in extra.checks:
                    if check.name.startswith("file_"):
                        report.add(check)
        return _emit(report, args.out)

    if args.command == "mc":
        report = suites.mc_suite(
            model=args.model,
            cells=args.cells,
            paths=args.paths,
            seed=args.seed,
            intensity=args.intensity,
        )
        if args.csv:
            grid = uniform_grid(1.0, args.cells)
            if args.model == "brownian":
                ens = montecarlo.brownian_ensemble(grid, args.paths, args.seed)
            else:
                ens = montecarlo.poisson_ensemble(grid, args.paths, args.seed, intensity=args.intensity)
            montecarlo.export_csv(ens, args.csv)
        return _emit(report, args.out)

    if args.command == "refine":
        if args.levels < 2:
            parser.error("--levels must be at least 2")
        report = suites.refinement_study(start_cells=args.cells, levels=args.levels, seed=args.seed)
        return _emit(report, args.out)

    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
