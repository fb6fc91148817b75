"""Experiment runner, algorithm comparison and timing benchmark.

Output formats
--------------
trace CSV           ``iter,isl,psl,elapsed_ms`` (row 0 is the initial sequence)
autocorrelation CSV ``lag,magnitude_db`` with ``20 log10 |r(k)|``
sequence CSV        ``index,real,imag,phase_rad``
compare CSV         ``algorithm,iter,isl,psl,elapsed_ms``
benchmark CSV       ``algorithm,N,avg_sweep_ms,avg_total_ms,avg_iterations``
"""
from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baselines import run_baseline
from .core import AutocorrelationProfile
from .fbmm import run_fbmm
from .init import INIT_KINDS, init_random, make_initial, run_seed
from .runs import RunConfig, RunTrace
from .spectral import autocorrelation_fft

log = logging.getLogger(__name__)

ALGORITHMS = ("fbmm", "misl", "can")
TRACE_HEADER = ("iter", "isl", "psl", "elapsed_ms")
AUTOCORR_HEADER = ("lag", "magnitude_db")
BENCH_HEADER = ("algorithm", "N", "avg_sweep_ms", "avg_total_ms", "avg_iterations")


@dataclass(frozen=True)
class ExperimentSpec:
    algorithm: str
    n: int
    init: str = "random"
    seed: int = 0
    tolerance: float = 1e-5
    max_iterations: int = 100_000
    runs: int = 1
    trace_path: str | None = None
    summary_path: str | None = None
    autocorr_path: str | None = None
    sequence_path: str | None = None
    normalize_db: bool = False
    jobs: int = 1

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if self.init not in INIT_KINDS:
            raise ValueError(f"unknown init {self.init!r}; expected one of {INIT_KINDS}")
        if self.n < 2:
            raise ValueError(f"N must be at least 2, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max iterations must be >= 1, got {self.max_iterations}")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        # surfaces the perfect-square error before any work starts
        make_initial(self.init, self.n, self.seed)

    @property
    def config(self) -> RunConfig:
        return RunConfig(tolerance=self.tolerance, max_sweeps=self.max_iterations)


@dataclass
class RunResult:
    algorithm: str
    init: str
    seed: int
    run: int
    sequence: np.ndarray
    trace: RunTrace

    @property
    def n(self) -> int:
        return self.sequence.size

    def summary(self) -> dict:
        profile = autocorrelation_fft(self.sequence)
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "init": self.init,
            "seed": self.seed,
            "final_isl": profile.isl,
            "final_psl": profile.psl,
            "iterations": self.trace.iterations,
            "elapsed_ms": self.trace.final.elapsed_ms,
            "terminated": self.trace.termination,
        }


def solve(algorithm: str, y0: np.ndarray, cfg: RunConfig) -> tuple[np.ndarray, RunTrace]:
    if algorithm == "fbmm":
        return run_fbmm(y0, cfg)
    if algorithm in ("misl", "can"):
        return run_baseline(algorithm, y0, cfg)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _single_run(spec: ExperimentSpec, run: int) -> RunResult:
    seed = run_seed(spec.seed, run)
    y0 = make_initial(spec.init, spec.n, seed)
    y, trace = solve(spec.algorithm, y0, spec.config)
    log.info("%s N=%d run %d: ISL %.6g after %d iterations (%s)",
             spec.algorithm, spec.n, run, trace.final.isl, trace.iterations, trace.termination)
    return RunResult(spec.algorithm, spec.init, seed, run, y, trace)


def run_experiment(spec: ExperimentSpec) -> list[RunResult]:
    """Run ``spec`` and write whatever output files it names.

    Random initialisation repeats the run ``spec.runs`` times with seeds
    ``seed ^ r``; deterministic initialisations run once. With several runs
    each output path gets a ``_runNNN`` suffix and the summary collects all
    runs.
    """
    spec.validate()
    runs = spec.runs if spec.init == "random" else 1
    if runs != spec.runs:
        log.warning("init %r is deterministic; running once instead of %d times", spec.init, spec.runs)

    if spec.jobs > 1 and runs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            results = list(pool.map(_single_run, [spec] * runs, range(runs)))
    else:
        results = [_single_run(spec, r) for r in range(runs)]

    for res in results:
        if spec.trace_path:
            write_trace(_run_path(spec.trace_path, res.run, runs), res.trace)
        if spec.autocorr_path:
            write_autocorr(_run_path(spec.autocorr_path, res.run, runs),
                           autocorrelation_fft(res.sequence), spec.normalize_db)
        if spec.sequence_path:
            write_sequence(_run_path(spec.sequence_path, res.run, runs), res.sequence)
    if spec.summary_path:
        write_json(spec.summary_path, summarize(results))
    return results


def summarize(results: list[RunResult]) -> dict:
    if len(results) == 1:
        return results[0].summary()
    per_run = [dict(r.summary(), run=r.run) for r in results]
    first = results[0]
    return {
        "algorithm": first.algorithm,
        "n": first.n,
        "init": first.init,
        "seed": results[0].seed,
        "runs": per_run,
        "mean_final_isl": float(np.mean([s["final_isl"] for s in per_run])),
        "mean_final_psl": float(np.mean([s["final_psl"] for s in per_run])),
        "mean_iterations": float(np.mean([s["iterations"] for s in per_run])),
        "mean_elapsed_ms": float(np.mean([s["elapsed_ms"] for s in per_run])),
    }


def compare(
    n: int,
    seed: int,
    out: str | None = None,
    init: str = "random",
    cfg: RunConfig | None = None,
    algorithms=ALGORITHMS,
) -> dict[str, RunResult]:
    """Run every algorithm from the same start; elapsed times all begin at 0."""
    cfg = cfg or RunConfig()
    y0 = make_initial(init, n, seed)
    results = {}
    for algo in algorithms:
        y, trace = solve(algo, y0, cfg)
        results[algo] = RunResult(algo, init, seed, 0, y, trace)
    if out:
        with _open_csv(out) as fh:
            w = csv.writer(fh)
            w.writerow(("algorithm",) + TRACE_HEADER)
            for algo, res in results.items():
                for rec in res.trace.records:
                    w.writerow((algo,) + _trace_row(rec))
    return results


def benchmark_scaling(
    lengths,
    runs: int,
    out: str | None = None,
    seed: int = 0,
    algorithms=ALGORITHMS,
    cfg: RunConfig | None = None,
) -> list[dict]:
    """Average run time and time per iteration for each length and algorithm.

    For each length, run ``r`` starts every algorithm from the same random
    sequence (seed ``seed ^ r``).
    """
    lengths = [int(n) for n in lengths]
    if lengths != sorted(lengths):
        raise ValueError(f"lengths must be sorted ascending, got {lengths}")
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    cfg = cfg or RunConfig()
    rows = []
    for n in lengths:
        starts = [init_random(n, run_seed(seed, r)) for r in range(runs)]
        for algo in algorithms:
            sweep_ms, total_ms, iters = [], [], []
            for y0 in starts:
                _, trace = solve(algo, y0, cfg)
                total = trace.final.elapsed_ms
                total_ms.append(total)
                iters.append(trace.iterations)
                sweep_ms.append(total / trace.iterations)
            rows.append({
                "algorithm": algo,
                "N": n,
                "avg_sweep_ms": float(np.mean(sweep_ms)),
                "avg_total_ms": float(np.mean(total_ms)),
                "avg_iterations": float(np.mean(iters)),
            })
            log.info("bench %s N=%d: %.3f ms total, %.1f iterations",
                     algo, n, rows[-1]["avg_total_ms"], rows[-1]["avg_iterations"])
    if out:
        with _open_csv(out) as fh:
            w = csv.DictWriter(fh, fieldnames=BENCH_HEADER)
            w.writeheader()
            w.writerows(rows)
    return rows


# -- writers -------------------------------------------------------------------


def _run_path(path: str, run: int, runs: int) -> Path:
    p = Path(path)
    if runs == 1:
        return p
    return p.with_name(f"{p.stem}_run{run:03d}{p.suffix}")


def _open_csv(path):
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    return open(p, "w", newline="")


def _trace_row(rec) -> tuple:
    return (rec.iter, repr(rec.isl), repr(rec.psl), f"{rec.elapsed_ms:.6f}")


def write_trace(path, trace: RunTrace) -> None:
    with _open_csv(path) as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_HEADER)
        for rec in trace.records:
            w.writerow(_trace_row(rec))


def write_autocorr(path, profile: AutocorrelationProfile, normalize: bool = False) -> None:
    db = profile.magnitude_db(normalize)
    with _open_csv(path) as fh:
        w = csv.writer(fh)
        w.writerow(AUTOCORR_HEADER)
        for k, v in enumerate(db):
            w.writerow((k, repr(float(v))))


def write_sequence(path, y: np.ndarray) -> None:
    with _open_csv(path) as fh:
        w = csv.writer(fh)
        w.writerow(("index", "real", "imag", "phase_rad"))
        for i, v in enumerate(y):
            w.writerow((i, repr(float(v.real)), repr(float(v.imag)), repr(float(np.angle(v)))))


def write_json(path, obj) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(obj, indent=2) + "\n")
