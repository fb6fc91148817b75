"""Block majorization-minimization for ISL minimization.

Each sweep visits the entries ``y[0], ..., y[N-1]`` in order. For entry
``i`` the ISL restricted to that entry is

    f_i(y_i) = 2 Re(alpha y_i^2) + 2 Re(beta y_i) + const,

with ``alpha`` and ``beta`` built from the lag constants ``c_k`` (the part of
``r(k)`` that does not involve ``y_i``) and the neighbours ``y[i-k]`` and
``y[i+k]``. Writing ``y_i = u1 + j u2`` turns this into ``v^T A v + e^T v``
on the unit circle; one MM step replaces ``A`` by ``lambda_max(A) I`` and
the minimiser of the surrogate is a normalised vector.

Moving from entry ``i-1`` to ``i`` only changes four products per lag, so
the constants for the whole sweep cost O(N^2) after one FFT at the start.

Block indices are 0-based throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba as nb
import numpy as np

from .core import as_unimodular
from .runs import RunConfig, RunTrace, iterate
from .spectral import _lags


# -- kernels -----------------------------------------------------------------
#
# ``s`` is y zero-padded as [0]*(N-2) + y + [0]*N, so y[q] lives at
# s[N-2+q]. Reads outside y land on the padding, except one read below the
# start of s that _advance guards explicitly.


_C1 = "complex128[::1]"


@nb.njit(f"void({_C1}, {_C1}, int64, int64)", cache=True)
def _advance(c, s, n, i):
    off = n - 2
    p = i - 1
    yp = s[off + p]
    yi = s[off + i]
    cyp = np.conj(yp)
    cyi = np.conj(yi)
    for k in range(1, n):
        t = s[off + p + k] * cyp - s[off + i + k] * cyi - yi * np.conj(s[off + i - k])
        if off + p - k >= 0:
            t += yp * np.conj(s[off + p - k])
        c[k - 1] += t


@nb.njit(f"UniTuple(complex128, 2)({_C1}, {_C1}, int64, int64)", cache=True)
def _coefficients(c, s, n, i):
    off = n - 2
    alpha = 0j
    beta = 0j
    for k in range(1, n):
        has_m = i - k >= 0
        has_n = i + k <= n - 1
        if has_m:
            cm = np.conj(s[off + i - k])
            beta += cm * np.conj(c[k - 1])
            if has_n:
                alpha += cm * np.conj(s[off + i + k])
        if has_n:
            beta += np.conj(s[off + i + k]) * c[k - 1]
    return alpha, beta


@nb.njit("UniTuple(float64, 2)(float64, float64, float64, float64, float64, float64)", cache=True)
def _mm_update(a, b, c, d, v1, v2):
    lam = math.sqrt(a * a + 0.25 * b * b)
    w1 = (a - lam) * v1 - 0.5 * b * v2
    w2 = -0.5 * b * v1 - (a + lam) * v2
    z1 = -(w1 + 0.5 * c)
    z2 = -(w2 - 0.5 * d)
    nz = math.hypot(z1, z2)
    # z at roundoff level: every unit v is (nearly) a surrogate minimiser
    if nz == 0.0 or nz <= 1e-15 * (lam + 0.5 * math.hypot(c, d)):
        return v1, v2
    return z1 / nz, z2 / nz


@nb.njit(f"void({_C1}, {_C1}, {_C1})", cache=True)
def _sweep_kernel(y, s, c):
    n = y.shape[0]
    off = n - 2
    for i in range(n):
        if i > 0:
            _advance(c, s, n, i)
        alpha, beta = _coefficients(c, s, n, i)
        v1, v2 = _mm_update(
            2.0 * alpha.real, 4.0 * alpha.imag, 2.0 * beta.real, 2.0 * beta.imag,
            y[i].real, y[i].imag,
        )
        yi = complex(v1, v2)
        yi = yi / abs(yi)
        y[i] = yi
        s[off + i] = yi


@nb.njit(f"void({_C1}, {_C1}, {_C1}, {_C1}, boolean)", cache=True)
def _run_sweep(y, lags, s, c, refresh):
    # one outer iteration: constants for entry 0, then the sweep; s and c are reused
    n = y.shape[0]
    off = n - 2
    y0c = np.conj(y[0])
    last = n - 1
    for k in range(1, n):
        if refresh:
            c[k - 1] = lags[k] - y[k] * y0c
        else:
            # wrap the constants of the last entry around to entry 0
            c[k - 1] += y[last] * np.conj(y[last - k]) - y[k] * y0c
    s[:] = 0
    s[off : off + n] = y
    _sweep_kernel(y, s, c)


# -- state types ---------------------------------------------------------------


def pad(y: np.ndarray) -> np.ndarray:
    n = y.size
    s = np.zeros(3 * n - 2, dtype=np.complex128)
    s[n - 2 : 2 * n - 2] = y
    return s


@dataclass
class ConstantsState:
    """Lag constants ``c[k-1]`` (k = 1..N-1) for entry ``block``."""

    c: np.ndarray
    s: np.ndarray
    block: int

    @property
    def n(self) -> int:
        return self.c.size + 1


@dataclass(frozen=True)
class BlockQuadratic:
    """``f(v) = v^T A v + e^T v`` for one entry, from ``alpha`` and ``beta``."""

    alpha: complex
    beta: complex

    @property
    def a(self) -> float:
        return 2.0 * self.alpha.real

    @property
    def b(self) -> float:
        return 4.0 * self.alpha.imag

    @property
    def c(self) -> float:
        return 2.0 * self.beta.real

    @property
    def d(self) -> float:
        return 2.0 * self.beta.imag

    @property
    def A(self) -> np.ndarray:
        a, hb = self.a, 0.5 * self.b
        return np.array([[a, -hb], [-hb, -a]])

    @property
    def e(self) -> np.ndarray:
        return np.array([self.c, -self.d])

    @property
    def lambda_max(self) -> float:
        return math.sqrt(self.a**2 + 0.25 * self.b**2)

    def objective(self, v) -> float:
        u1, u2 = v
        return self.a * (u1 * u1 - u2 * u2) - self.b * u1 * u2 + self.c * u1 - self.d * u2


# -- operations ----------------------------------------------------------------


def constants_init(y, block: int = 0) -> ConstantsState:
    """Constants for ``block`` from one FFT autocorrelation of ``y``."""
    y = as_unimodular(y)
    n = y.size
    if not 0 <= block < n:
        raise IndexError(f"block {block} out of range for N={n}")
    c = _lags(y)[1:].copy()
    k = np.arange(1, n)
    left = block - k >= 0
    right = block + k <= n - 1
    c[left] -= y[block] * np.conj(y[block - k[left]])
    c[right] -= y[block + k[right]] * np.conj(y[block])
    return ConstantsState(c=c, s=pad(y), block=block)


def constants_step(state: ConstantsState, y) -> ConstantsState:
    """Advance ``state`` by one entry.

    ``y`` must already carry the updated value of entry ``state.block``.
    """
    y = np.asarray(y, dtype=np.complex128)
    n = state.n
    i = state.block + 1
    if not 1 <= i < n or y.size != n:
        raise IndexError(f"cannot advance from block {state.block} (N={n})")
    c = state.c.copy()
    s = pad(y)
    _advance(c, s, n, i)
    return ConstantsState(c=c, s=s, block=i)


def block_coefficients(state: ConstantsState) -> BlockQuadratic:
    alpha, beta = _coefficients(state.c, state.s, state.n, state.block)
    return BlockQuadratic(complex(alpha), complex(beta))


def mm_step(q: BlockQuadratic, v) -> np.ndarray:
    """One MM update on the unit circle; returns ``v`` itself if ``z == 0``."""
    v1, v2 = _mm_update(q.a, q.b, q.c, q.d, float(v[0]), float(v[1]))
    return np.array([v1, v2])


def sweep(y, state: ConstantsState | None = None) -> tuple[np.ndarray, ConstantsState]:
    """Update every entry once, in ascending order.

    Returns the new sequence and the constants positioned at the last entry.
    """
    if state is None:
        state = constants_init(y)
    elif state.block != 0:
        raise ValueError("sweep must start from block 0")
    y = np.array(y, dtype=np.complex128)
    c = state.c.copy()
    s = pad(y)
    _sweep_kernel(y, s, c)
    return y, ConstantsState(c=c, s=s, block=y.size - 1)


def run_fbmm(y0, cfg: RunConfig | None = None) -> tuple[np.ndarray, RunTrace]:
    cfg = cfg or RunConfig()
    y0 = as_unimodular(y0)
    n = y0.size
    s = np.zeros(3 * n - 2, dtype=np.complex128)
    c = np.zeros(n - 1, dtype=np.complex128)
    started = [False]

    def update(y, lags):
        _run_sweep(y, lags, s, c, cfg.refresh_each_sweep or not started[0])
        started[0] = True
        return y

    return iterate(update, y0, cfg)
