"""Slow reference computations used to check the fast paths.

None of these share code with the solvers beyond plain numpy.
"""
from __future__ import annotations

import numpy as np


def _direct_isl(y: np.ndarray) -> float:
    return float(sum(abs(r) ** 2 for r in _direct_lags(y)[1:]))


def _direct_lags(y: np.ndarray) -> np.ndarray:
    n = y.size
    return np.array([np.sum(y[k:] * np.conj(y[: n - k])) for k in range(n)])


def oracle_constants(y, block: int) -> np.ndarray:
    """``c_k = sum_{q>=k} y[q] conj(y[q-k])`` skipping every term with ``y[block]``."""
    y = np.asarray(y, dtype=np.complex128)
    n = y.size
    if not 0 <= block < n:
        raise IndexError(f"block {block} out of range for N={n}")
    out = np.zeros(n - 1, dtype=np.complex128)
    for k in range(1, n):
        for q in range(k, n):
            if q == block or q - k == block:
                continue
            out[k - 1] += y[q] * np.conj(y[q - k])
    return out


def oracle_block_objective(y, block: int, candidate: complex) -> float:
    """Full ISL of ``y`` with entry ``block`` replaced by ``candidate``."""
    z = np.array(y, dtype=np.complex128)
    z[block] = candidate
    return _direct_isl(z)


def oracle_best_phase(y, block: int, grid_points: int = 4096) -> complex:
    """Best unit value for one entry over a uniform phase grid.

    Near-ties (1e-12 relative) go to the smallest phase in ``[0, 2 pi)``.
    """
    if grid_points < 8:
        raise ValueError("grid_points must be at least 8")
    y = np.asarray(y, dtype=np.complex128)
    n = y.size
    phases = 2.0 * np.pi * np.arange(grid_points) / grid_points
    cands = np.exp(1j * phases)
    # r_k is affine in (x, conj x): r_k(x) = rest_k + x conj(y[i-k]) + y[i+k] conj(x)
    lags = _direct_lags(y)
    yi = y[block]
    values = np.zeros(grid_points)
    for k in range(1, n):
        m = y[block - k] if block - k >= 0 else 0j
        nxt = y[block + k] if block + k < n else 0j
        rest = lags[k] - yi * np.conj(m) - nxt * np.conj(yi)
        r = rest + cands * np.conj(m) + nxt * np.conj(cands)
        values += r.real**2 + r.imag**2
    best = values.min()
    idx = int(np.flatnonzero(values <= best + 1e-12 * max(1.0, abs(best)))[0])
    return complex(cands[idx])
