"""CAN and MISL, the FFT-based reference algorithms.

Both only use the phases of the inverse transform, so the ``1/(2N)`` scale
of :func:`unimod.spectral.inverse_first_n` does not matter.
"""
from __future__ import annotations

import enum

import numpy as np

from .core import as_unimodular, project_unimodular
from .runs import RunConfig, RunTrace, iterate


class BaselineKind(enum.Enum):
    CAN = "can"
    MISL = "misl"


def _phase(z: np.ndarray) -> np.ndarray:
    # exp(j arg z) with arg(0) = 0
    return project_unimodular(z)


def _can(y: np.ndarray) -> np.ndarray:
    n = y.size
    u = np.fft.fft(y, 2 * n)
    g = np.fft.ifft(_phase(u))[:n]
    return _phase(g)


def _misl(y: np.ndarray) -> np.ndarray:
    n = y.size
    u = np.fft.fft(y, 2 * n)
    p = u.real**2 + u.imag**2
    w = (p - p.max() - float(n) ** 2) * u
    return _phase(-np.fft.ifft(w)[:n])


def can_iteration(y) -> np.ndarray:
    """One alternating-projection step of CAN.

    CAN descends a surrogate of the spectral-flatness objective, not the ISL
    itself, so the ISL may go up between iterations.
    """
    return _can(as_unimodular(y))


def misl_iteration(y) -> np.ndarray:
    """One MM step of MISL; never increases the ISL."""
    return _misl(as_unimodular(y))


_UPDATES = {BaselineKind.CAN: _can, BaselineKind.MISL: _misl}


def run_baseline(
    kind: BaselineKind | str, y0, cfg: RunConfig | None = None
) -> tuple[np.ndarray, RunTrace]:
    kind = BaselineKind(kind)
    step = _UPDATES[kind]
    return iterate(lambda y, _lags: step(y), as_unimodular(y0), cfg or RunConfig())
