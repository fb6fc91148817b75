"""Starting sequences: random phases, Golomb and Frank."""
from __future__ import annotations

import math

import numpy as np


def _check_length(n: int) -> None:
    if n < 2:
        raise ValueError(f"sequence length must be at least 2, got {n}")


def run_seed(seed: int, run: int) -> int:
    """Seed for Monte-Carlo run ``run``: ``seed XOR run``."""
    return seed ^ run


def init_random(n: int, seed: int) -> np.ndarray:
    """``exp(j 2 pi theta)`` with theta uniform on [0, 1).

    Draws come from numpy's PCG64 ``Generator`` seeded with ``seed``.
    """
    _check_length(n)
    rng = np.random.default_rng(seed)
    return np.exp(2j * np.pi * rng.random(n))


def init_golomb(n: int) -> np.ndarray:
    """Golomb polyphase sequence, phase ``pi (m-1) m / N`` for m = 1..N."""
    _check_length(n)
    m = np.arange(1, n + 1)
    # reduce the quadratic phase exactly before scaling to keep large N accurate
    num = ((m - 1) * m) % (2 * n)
    return np.exp(1j * np.pi * num / n)


def init_frank(n: int) -> np.ndarray:
    """Frank sequence of length ``N = L^2``, phase ``2 pi (m-1)(p-1) / L``."""
    _check_length(n)
    root = math.isqrt(n)
    if root * root != n:
        raise ValueError(f"Frank sequence length must be a perfect square, got {n} (not a perfect square)")
    idx = np.arange(root)
    num = np.outer(idx, idx) % root
    return np.exp(2j * np.pi * num.ravel() / root)


INIT_KINDS = ("random", "golomb", "frank")


def make_initial(kind: str, n: int, seed: int = 0) -> np.ndarray:
    if kind == "random":
        return init_random(n, seed)
    if kind == "golomb":
        return init_golomb(n)
    if kind == "frank":
        return init_frank(n)
    raise ValueError(f"unknown init {kind!r}; expected one of {INIT_KINDS}")
