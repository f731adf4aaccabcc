"""Independent checks: exhaustive partition search and trace-maximisation bounds.

Nothing here reuses the embedding code paths it is meant to certify except
through their public results; competitors are random orthonormal frames from
:mod:`spectralcut.rng`, and discrete optima come from brute-force enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, rng
from .engine import normalize_bipartite
from .errors import TooLarge
from .graph import AffinityGraph, ObjectiveSpec, Partition, symmetric_pair

MAX_ENUMERATION_N = 12
TRIAL_CHUNK = 2000


@dataclass(frozen=True)
class EnumerationResult:
    best_partition: Partition
    best_value: float
    partitions_checked: int


@dataclass(frozen=True)
class KyFanReport:
    max_random_trace: float
    eigen_trace: float
    eigenvalue_sum: float


@dataclass(frozen=True)
class RectKyFanReport:
    max_random_trace: float
    svd_trace: float
    psi_trace: float
    singular_value_sum: float


@dataclass(frozen=True)
class GapReport:
    relaxed: float
    discrete: float
    gap: float


def stirling2(n: int, k: int) -> int:
    """Number of ways to split ``n`` labelled items into ``k`` non-empty blocks."""
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def restricted_growth_strings(n: int, k: int) -> np.ndarray:
    """All length-``n`` restricted growth strings using exactly ``k`` symbols, lexicographically sorted.

    Row ``r`` is a canonical labelling of one set partition: position 0 is
    0 and each entry is at most one more than the maximum before it.
    """
    if not 1 <= k <= n:
        return np.zeros((0, n), dtype=np.int8)
    strings = np.zeros((1, 1), dtype=np.int8)
    top = np.zeros(1, dtype=np.int8)
    for pos in range(1, n):
        remaining = n - pos - 1
        parts, tops = [], []
        for v in range(k):
            new_top = np.maximum(top, v)
            ok = (v <= top + 1) & (k - 1 - new_top <= remaining)
            if ok.any():
                block = np.empty((int(ok.sum()), pos + 1), dtype=np.int8)
                block[:, :pos] = strings[ok]
                block[:, pos] = v
                parts.append(block)
                tops.append(new_top[ok])
        strings = np.concatenate(parts)
        top = np.concatenate(tops)
    strings = strings[top == k - 1]
    order = np.lexsort(strings.T[::-1])
    return strings[order]


def _batch_objective(labels: np.ndarray, affinity: np.ndarray, phi: np.ndarray, k: int) -> np.ndarray:
    z = np.zeros(labels.shape + (k,))
    np.put_along_axis(z, labels[..., None].astype(np.intp), 1.0, axis=-1)
    za = np.einsum("pik,ij->pkj", z, affinity)
    within = np.einsum("pkj,pjk->pk", za, z)
    weight = np.einsum("pik,i->pk", z, phi)
    return np.sum(within / weight, axis=1) / k


def enumerate_best(g: AffinityGraph, spec: ObjectiveSpec, k: int) -> EnumerationResult:
    """Exact maximiser of the discrete objective over every partition into exactly ``k`` blocks.

    Among partitions within 1e-12 (relative) of the maximum, the
    lexicographically smallest restricted growth string wins.
    """
    n = g.n_vertices
    if n > MAX_ENUMERATION_N:
        raise TooLarge(f"enumeration capped at {MAX_ENUMERATION_N} vertices, graph has {n}")
    linalg.check_k(k, n)
    affinity, phi = symmetric_pair(g, spec)
    strings = restricted_growth_strings(n, k)
    values = np.concatenate(
        [_batch_objective(strings[i : i + 50000], affinity, phi, k) for i in range(0, len(strings), 50000)]
    )
    top = float(values.max())
    idx = int(np.flatnonzero(values >= top - 1e-12 * max(1.0, abs(top)))[0])
    part = Partition(tuple(strings[idx].tolist()), k)
    return EnumerationResult(part, float(values[idx]), len(strings))


def relaxed_value(g: AffinityGraph, spec: ObjectiveSpec, k: int) -> float:
    """``(1/k) * sum`` of the top-k eigenvalues of the normalised symmetric matrix of ``g``."""
    affinity, phi = symmetric_pair(g, spec)
    return float(np.sum(linalg.eigh(linalg.scale_symmetric(affinity, phi), k).values) / k)


def relaxation_gap(g: AffinityGraph, spec: ObjectiveSpec, k: int) -> GapReport:
    discrete = enumerate_best(g, spec, k).best_value
    relaxed = relaxed_value(g, spec, k)
    return GapReport(relaxed, discrete, relaxed - discrete)


def _chunks(trials: int):
    for start in range(0, trials, TRIAL_CHUNK):
        yield np.arange(start, min(trials, start + TRIAL_CHUNK))


def kyfan_symmetric_check(h, k: int, trials: int, seed: int) -> KyFanReport:
    """Compare ``tr(X^T H X)`` at the top-k eigenvectors with ``trials`` random orthonormal ``X``.

    Trial ``t`` uses the frame keyed by ``derive(seed, t)``.
    """
    h = linalg.as_matrix(h)
    dec = linalg.eigh(h, k)
    x = dec.vectors
    eigen_trace = float(np.sum(x * (h @ x)))
    best = -np.inf
    for idx in _chunks(trials):
        frames = rng.random_orthonormal(rng.derive(seed, idx), h.shape[0], k)
        traces = np.einsum("tik,ij,tjk->t", frames, h, frames)
        best = max(best, float(traces.max()))
    return KyFanReport(best, eigen_trace, float(np.sum(dec.values)))


def kyfan_rect_check(r, k: int, trials: int, seed: int) -> RectKyFanReport:
    """Rectangular trace bound ``max tr(X^T R Y)`` checked two ways and against random frames.

    ``svd_trace`` is ``tr(U_k^T R V_k)`` from the singular vectors.
    ``psi_trace`` comes from the top-k eigenvectors ``[x; y]`` of
    ``[[0, R], [R^T, 0]]``: rescaling each half by ``sqrt(2)`` gives unit
    frames ``X, Y`` and ``psi_trace = tr(X^T R Y)``. Random pair ``t`` takes
    ``X`` from key ``derive(seed, 2t)`` and ``Y`` from ``derive(seed, 2t+1)``.
    """
    r = linalg.as_matrix(r)
    m, n = r.shape
    s = linalg.svd(r, k)
    svd_trace = float(np.sum(s.u * (r @ s.v)))
    psi = np.zeros((m + n, m + n))
    psi[:m, m:] = r
    psi[m:, :m] = r.T
    e = linalg.eigh(psi, k).vectors * np.sqrt(2.0)
    psi_trace = float(np.sum(e[:m] * (r @ e[m:])))
    best = -np.inf
    for idx in _chunks(trials):
        xs = rng.random_orthonormal(rng.derive(seed, 2 * idx), m, k)
        ys = rng.random_orthonormal(rng.derive(seed, 2 * idx + 1), n, k)
        traces = np.einsum("tik,ij,tjk->t", xs, r, ys)
        best = max(best, float(traces.max()))
    return RectKyFanReport(best, svd_trace, psi_trace, float(np.sum(s.sigma)))


def augmented_spectrum_deviation(a, spec: ObjectiveSpec) -> float:
    """Largest gap between the full spectrum of the normalised block matrix and ``{+-sigma} U {0}``."""
    a_bar = normalize_bipartite(a, spec)
    m, n = a_bar.shape
    sigma = linalg.svd(a_bar).sigma
    expected = np.concatenate([sigma, -sigma, np.zeros(abs(m - n))])
    block = np.zeros((m + n, m + n))
    block[:m, m:] = a_bar
    block[m:, :m] = a_bar.T
    observed = linalg.eigh(block).values
    return float(np.max(np.abs(np.sort(observed) - np.sort(expected))))


def sign_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max over columns of ``min(|a_j - b_j|, |a_j + b_j|)``."""
    plus = np.sqrt(np.sum((a - b) ** 2, axis=0))
    minus = np.sqrt(np.sum((a + b) ** 2, axis=0))
    return float(np.max(np.minimum(plus, minus)))
