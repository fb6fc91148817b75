"""Sequences, aperiodic autocorrelation and sidelobe metrics.

Everything here works on plain ``complex128`` numpy arrays. The direct
O(N^2) routines are the reference path; :mod:`unimod.spectral` holds the
FFT versions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_ATOL = 1e-12


@dataclass(frozen=True)
class AutocorrelationProfile:
    """Lags ``r(0..N-1)`` of a sequence with its ISL and PSL."""

    lags: np.ndarray
    isl: float
    psl: float

    @classmethod
    def from_lags(cls, lags: np.ndarray) -> "AutocorrelationProfile":
        side = np.abs(lags[1:])
        isl = float(np.sum(side**2))
        psl = float(side.max()) if side.size else 0.0
        return cls(lags=lags, isl=isl, psl=psl)

    def magnitude_db(self, normalize: bool = False) -> np.ndarray:
        """``20 log10 |r(k)|``, optionally relative to ``r(0)``.

        Exact zeros map to ``-inf``.
        """
        mag = np.abs(self.lags)
        if normalize:
            mag = mag / mag[0]
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(mag)


def as_unimodular(y, atol: float = UNIT_ATOL) -> np.ndarray:
    """Validate ``y`` as a unimodular sequence and return it as complex128.

    Raises ``ValueError`` if the length is below 2 or any entry is off the
    unit circle by more than ``atol``.
    """
    arr = np.asarray(y, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"sequence must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError(f"sequence length must be at least 2, got {arr.size}")
    dev = np.max(np.abs(np.abs(arr) - 1.0))
    if not dev <= atol:
        raise ValueError(f"entries are not unit modulus (max deviation {dev:.3g})")
    return arr


def project_unimodular(z) -> np.ndarray:
    """Divide every entry by its modulus.

    Entries whose modulus is zero, or underflows when squared, map to ``1``.
    """
    z = np.asarray(z, dtype=np.complex128)
    mag = np.abs(z)
    # moduli this small square to zero in the metrics; treat them as zero
    small = mag < 1e-150
    out = np.where(small, 1.0 + 0.0j, z / np.where(small, 1.0, mag))
    return out.astype(np.complex128)


def autocorrelation_direct(y) -> AutocorrelationProfile:
    """Aperiodic autocorrelation by explicit summation, O(N^2)."""
    y = as_unimodular(y)
    n = y.size
    lags = np.empty(n, dtype=np.complex128)
    for k in range(n):
        lags[k] = np.sum(y[k:] * np.conj(y[: n - k]))
    return AutocorrelationProfile.from_lags(lags)


def isl(y) -> float:
    """Integrated sidelobe level, sum of ``|r(k)|^2`` for ``k >= 1``."""
    return autocorrelation_direct(y).isl


def psl(y) -> float:
    """Peak sidelobe level, max of ``|r(k)|`` for ``k >= 1``."""
    return autocorrelation_direct(y).psl
