"""Command line entry point.

    unimod design --algo fbmm --n 100 --init random --seed 1 --trace t.csv --summary s.json
    unimod bench --lengths 50,100,200 --runs 10 --out bench.csv
    unimod compare --n 100 --seed 1 --out compare.csv

Exit codes: 0 success, 2 invalid arguments, 3 runtime failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import experiment
from .runs import RunConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _lengths(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad length list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unimod", description="Unimodular sequence design by ISL minimization.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("design", help="run one algorithm and write trace/summary files")
    d.add_argument("--algo", choices=experiment.ALGORITHMS, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--init", choices=("random", "golomb", "frank"), default="random")
    d.add_argument("--seed", type=_u64, default=0)
    d.add_argument("--tol", type=float, default=1e-5)
    d.add_argument("--max-iter", type=int, default=100_000)
    d.add_argument("--trace")
    d.add_argument("--summary", help="JSON summary path (printed to stdout if omitted)")
    d.add_argument("--dump-autocorr")
    d.add_argument("--dump-sequence")
    d.add_argument("--runs", type=int, default=1)
    d.add_argument("--jobs", type=int, default=1, help="parallel Monte-Carlo workers")
    d.add_argument("--normalize-db", action="store_true", help="autocorrelation dB relative to r(0)")

    b = sub.add_parser("bench", help="average timing per length and algorithm")
    b.add_argument("--lengths", type=_lengths, default=[50, 100, 200, 300, 400, 500])
    b.add_argument("--runs", type=int, default=30)
    b.add_argument("--seed", type=_u64, default=0)
    b.add_argument("--algos", default=",".join(experiment.ALGORITHMS))
    b.add_argument("--tol", type=float, default=1e-5)
    b.add_argument("--max-iter", type=int, default=100_000)
    b.add_argument("--out", required=True)

    c = sub.add_parser("compare", help="run all algorithms from one start into one CSV")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--seed", type=_u64, default=0)
    c.add_argument("--init", choices=("random", "golomb", "frank"), default="random")
    c.add_argument("--tol", type=float, default=1e-5)
    c.add_argument("--max-iter", type=int, default=100_000)
    c.add_argument("--out", required=True)
    return parser


def _design_spec(args) -> experiment.ExperimentSpec:
    return experiment.ExperimentSpec(
        algorithm=args.algo, n=args.n, init=args.init, seed=args.seed,
        tolerance=args.tol, max_iterations=args.max_iter, runs=args.runs,
        trace_path=args.trace, summary_path=args.summary,
        autocorr_path=args.dump_autocorr, sequence_path=args.dump_sequence,
        normalize_db=args.normalize_db, jobs=args.jobs,
    )


def _design(args) -> int:
    results = experiment.run_experiment(_design_spec(args))
    if not args.summary:
        print(json.dumps(experiment.summarize(results), indent=2))
    return EXIT_OK


def _bench_algos(args) -> list[str]:
    return [a.strip() for a in args.algos.split(",") if a.strip()]


def _bench(args) -> int:
    cfg = RunConfig(tolerance=args.tol, max_sweeps=args.max_iter)
    experiment.benchmark_scaling(args.lengths, args.runs, out=args.out, seed=args.seed,
                                 algorithms=_bench_algos(args), cfg=cfg)
    return EXIT_OK


def _compare(args) -> int:
    cfg = RunConfig(tolerance=args.tol, max_sweeps=args.max_iter)
    experiment.compare(args.n, args.seed, out=args.out, init=args.init, cfg=cfg)
    return EXIT_OK


def _validate(args) -> None:
    """Raise ValueError for any argument problem, before work starts."""
    RunConfig(tolerance=args.tol, max_sweeps=args.max_iter)
    if args.command == "design":
        _design_spec(args).validate()
    elif args.command == "bench":
        algos = _bench_algos(args)
        bad = set(algos) - set(experiment.ALGORITHMS)
        if bad or not algos:
            raise ValueError(f"unknown algorithms: {sorted(bad)}")
        if not args.lengths or min(args.lengths) < 2:
            raise ValueError("lengths must be integers >= 2")
        if args.lengths != sorted(args.lengths):
            raise ValueError("lengths must be sorted ascending")
        if args.runs < 1:
            raise ValueError("runs must be >= 1")
    else:
        experiment.ExperimentSpec("fbmm", args.n, init=args.init, seed=args.seed).validate()


_COMMANDS = {"design": _design, "bench": _bench, "compare": _compare}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        _validate(args)
    except ValueError as exc:
        print(f"unimod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, RuntimeError, ArithmeticError) as exc:
        print(f"unimod: {args.command} failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
