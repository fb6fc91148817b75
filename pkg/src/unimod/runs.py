"""Run configuration, iteration traces and the shared outer loop."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .spectral import _lags

CONVERGED = "converged"
MAX_ITERATIONS = "max_iterations"


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-5
    max_sweeps: int = 100_000
    record_psl: bool = True
    refresh_each_sweep: bool = True

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be >= 1, got {self.max_sweeps}")


class TraceRecord(NamedTuple):
    iter: int
    isl: float
    psl: float
    elapsed_ms: float


@dataclass
class RunTrace:
    """Per-iteration metrics. Row 0 holds the initial sequence."""

    records: list[TraceRecord] = field(default_factory=list)
    termination: str | None = None

    @property
    def iterations(self) -> int:
        return len(self.records) - 1

    @property
    def isl(self) -> np.ndarray:
        return np.array([r.isl for r in self.records])

    @property
    def psl(self) -> np.ndarray:
        return np.array([r.psl for r in self.records])

    @property
    def elapsed_ms(self) -> np.ndarray:
        return np.array([r.elapsed_ms for r in self.records])

    @property
    def final(self) -> TraceRecord:
        return self.records[-1]


def relative_change(new: float, old: float) -> float:
    return abs(new - old) / max(1.0, old)


def iterate(
    update: Callable[[np.ndarray, np.ndarray], np.ndarray],
    y0: np.ndarray,
    cfg: RunConfig,
) -> tuple[np.ndarray, RunTrace]:
    """Apply ``update(y, lags)`` until the relative ISL change is small.

    ``lags`` is the autocorrelation of the ``y`` being passed in, which the
    loop has to compute anyway for the stopping rule.
    """
    y = np.array(y0, dtype=np.complex128)
    trace = RunTrace()
    start = time.perf_counter()

    lags = _lags(y)
    cur_isl, cur_psl = _metrics(lags, cfg.record_psl)
    trace.records.append(TraceRecord(0, cur_isl, cur_psl, 0.0))

    trace.termination = MAX_ITERATIONS
    for t in range(1, cfg.max_sweeps + 1):
        y = update(y, lags)
        lags = _lags(y)
        new_isl, new_psl = _metrics(lags, cfg.record_psl)
        elapsed = (time.perf_counter() - start) * 1e3
        trace.records.append(TraceRecord(t, new_isl, new_psl, elapsed))
        done = relative_change(new_isl, cur_isl) <= cfg.tolerance
        cur_isl = new_isl
        if done:
            trace.termination = CONVERGED
            break
    return y, trace


def _metrics(lags: np.ndarray, with_psl: bool) -> tuple[float, float]:
    r = lags[1:]
    p = r.real**2 + r.imag**2
    return float(p.sum()), (float(math.sqrt(p.max())) if with_psl else math.nan)
