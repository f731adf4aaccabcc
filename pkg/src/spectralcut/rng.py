"""Counter-based SplitMix64 streams.

Output ``n`` (0-based) of the stream keyed by ``key`` is
``finalize(key + (n + 1) * GAMMA)`` modulo 2**64, where ``finalize`` is the
SplitMix64 output mix. Because every draw is a pure function of
``(key, n)`` the streams vectorise and are independent of evaluation order.

Derived keys: ``derive(seed, i) = finalize(seed + (i + 1) * GAMMA)``, i.e.
output ``i`` of the stream keyed by ``seed``.

Uniforms use the top 53 bits: ``u = ((x >> 11) + 1) * 2**-53`` in (0, 1].
Gaussians use one Box-Muller draw per pair of consecutive outputs
``(2n, 2n+1)``: ``sqrt(-2 ln u0) * cos(2 pi u1)``.
"""
from __future__ import annotations

import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
MUL1 = np.uint64(0xBF58476D1CE4E5B9)
MUL2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def finalize(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * MUL1
        z = (z ^ (z >> np.uint64(27))) * MUL2
    return z ^ (z >> np.uint64(31))


def _key(seed) -> np.ndarray:
    if isinstance(seed, np.ndarray):
        return seed.astype(np.uint64)
    return np.asarray(int(seed) & _MASK, dtype=np.uint64)


def raw(key, count: int) -> np.ndarray:
    """``count`` 64-bit outputs for each key; shape ``key.shape + (count,)``."""
    k = _key(key)
    n = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return finalize(k[..., None] + n * GAMMA)


def derive(seed, index) -> np.ndarray:
    """Child keys ``derive(seed, i)`` for an array of indices."""
    k = _key(seed)
    i = np.asarray(index, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return finalize(k + (i + np.uint64(1)) * GAMMA)


def uniform(key, count: int) -> np.ndarray:
    x = raw(key, count)
    return ((x >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53


def gaussian(key, count: int) -> np.ndarray:
    u = uniform(key, 2 * count)
    u0, u1 = u[..., 0::2], u[..., 1::2]
    return np.sqrt(-2.0 * np.log(u0)) * np.cos(2.0 * np.pi * u1)


def random_orthonormal(key, rows: int, cols: int) -> np.ndarray:
    """Random ``rows x cols`` matrices with orthonormal columns, one per key.

    Entry ``(i, j)`` is Gaussian draw ``j * rows + i`` of the key's stream
    (column-major fill); columns are then orthonormalised left to right by
    modified Gram-Schmidt.
    """
    key = _key(key)
    g = gaussian(key, rows * cols)
    x = g.reshape(key.shape + (cols, rows)).swapaxes(-1, -2).copy()
    for j in range(cols):
        col = x[..., :, j]
        for c in range(j):
            prev = x[..., :, c]
            col = col - np.sum(prev * col, axis=-1, keepdims=True) * prev
        x[..., :, j] = col / np.sqrt(np.sum(col * col, axis=-1, keepdims=True))
    return x
