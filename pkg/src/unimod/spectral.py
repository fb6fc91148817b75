"""FFT helpers on the 2N-point frequency grid.

``forward_2n`` is the analysis transform ``u_f = sum_i y_i exp(-j w_f (i-1))``
with ``w_f = 2 pi (f-1) / 2N``. ``inverse_first_n`` returns the first N
samples of ``numpy.fft.ifft``, i.e. the synthesis sum scaled by ``1/(2N)``.
Callers that only take phases of the result are unaffected by that scale.
"""
from __future__ import annotations

import numpy as np

from .core import AutocorrelationProfile, as_unimodular


def frequency_grid(n: int) -> np.ndarray:
    """Angular frequencies of the 2N-point grid, in radians."""
    return 2.0 * np.pi * np.arange(2 * n) / (2 * n)


def forward_2n(y) -> np.ndarray:
    y = np.asarray(y, dtype=np.complex128)
    if y.ndim != 1:
        raise ValueError(f"expected a vector, got shape {y.shape}")
    return np.fft.fft(y, 2 * y.size)


def inverse_first_n(x, n: int | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1 or x.size % 2:
        raise ValueError(f"expected a vector of even length, got shape {x.shape}")
    half = x.size // 2
    if n is not None and n != half:
        raise ValueError(f"length {x.size} transform does not match N={n}")
    return np.fft.ifft(x)[:half]


def _lags(y: np.ndarray) -> np.ndarray:
    n = y.size
    u = np.fft.fft(y, 2 * n)
    u *= u.conj()
    return np.fft.ifft(u)[:n]


def autocorrelation_fft(y) -> AutocorrelationProfile:
    """Aperiodic autocorrelation via one 2N-point FFT/IFFT pair."""
    y = as_unimodular(y)
    return AutocorrelationProfile.from_lags(_lags(y))


def fast_isl(y: np.ndarray) -> float:
    """ISL through the FFT path without validating ``y``.

    Used inside the solver loops where the iterate is unit modulus by
    construction.
    """
    r = _lags(y)[1:]
    return float(np.sum(r.real**2 + r.imag**2))


def fast_metrics(y: np.ndarray) -> tuple[float, float]:
    r = _lags(y)[1:]
    p = r.real**2 + r.imag**2
    return float(np.sum(p)), float(np.sqrt(p.max()))


def isl_frequency(y) -> float:
    """ISL from the spectrum: ``(1/4N) sum_f (|u_f|^2 - N)^2``."""
    y = as_unimodular(y)
    n = y.size
    u = forward_2n(y)
    return float(np.sum((np.abs(u) ** 2 - n) ** 2) / (4 * n))
