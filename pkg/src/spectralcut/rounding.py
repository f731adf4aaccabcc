"""Turning relaxed embeddings into hard partitions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .engine import SpectralEmbedding
from .errors import DegenerateEmbedding, DimensionMismatch
from .graph import AffinityGraph, Partition, require_unipartite


@dataclass(frozen=True)
class RoundingConfig:
    seed: int = 0
    max_iters: int = 100
    restarts: int = 8
    tol: float = 1e-9

    def __post_init__(self):
        if self.max_iters < 1 or self.restarts < 1:
            raise ValueError("max_iters and restarts must be at least 1")
        if self.tol < 0:
            raise ValueError("tol must be nonnegative")


@dataclass(frozen=True)
class KMeansResult:
    partition: Partition
    inertia: float
    history: tuple[float, ...]
    restart: int


def _sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.sum(diff * diff, axis=2)


def farthest_first(points: np.ndarray, k: int, start: int) -> np.ndarray:
    """Indices of ``k`` seeds: ``start``, then repeatedly the point farthest from all chosen seeds."""
    chosen = [start]
    nearest = _sq_dists(points, points[[start]])[:, 0]
    for _ in range(1, k):
        nxt = int(np.argmax(nearest))
        chosen.append(nxt)
        nearest = np.minimum(nearest, _sq_dists(points, points[[nxt]])[:, 0])
    return np.array(chosen)


def _repair_empty(points, labels, centers, k):
    """Give each empty cluster the point farthest from its own centroid (taken from a cluster with >1 member)."""
    for c in range(k):
        sizes = np.bincount(labels, minlength=k)
        if sizes[c]:
            continue
        own = np.sum((points - centers[labels]) ** 2, axis=1)
        own[sizes[labels] <= 1] = -1.0
        i = int(np.argmax(own))
        donor = labels[i]
        labels[i] = c
        centers[c] = points[i]
        centers[donor] = points[labels == donor].mean(axis=0)
    return labels, centers


def _lloyd(points: np.ndarray, k: int, seeds: np.ndarray, cfg: RoundingConfig):
    centers = points[seeds].copy()
    labels = np.argmin(_sq_dists(points, centers), axis=1)
    labels, centers = _repair_empty(points, labels, centers, k)
    history = []
    for _ in range(cfg.max_iters):
        centers = np.stack([points[labels == c].mean(axis=0) for c in range(k)])
        inertia = float(np.sum((points - centers[labels]) ** 2))
        history.append(inertia)
        new = np.argmin(_sq_dists(points, centers), axis=1)
        new, centers = _repair_empty(points, new, centers, k)
        if np.array_equal(new, labels):
            break
        labels = new
        if len(history) > 1 and history[-2] - history[-1] <= cfg.tol * history[-2]:
            break
    centers = np.stack([points[labels == c].mean(axis=0) for c in range(k)])
    inertia = float(np.sum((points - centers[labels]) ** 2))
    if not history or inertia != history[-1]:
        history.append(inertia)
    return labels, inertia, history


def kmeans(points, k: int, cfg: RoundingConfig = RoundingConfig()) -> KMeansResult:
    """Best of ``cfg.restarts`` Lloyd runs, each seeded by farthest-first traversal.

    Restart ``r`` starts its traversal at row ``derive(cfg.seed, r) mod n``.
    Assignment ties go to the lowest cluster id; restart ties to the earliest
    restart. Labels are returned in order of first appearance.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise DimensionMismatch("points must be a 2-D array")
    n = points.shape[0]
    if k < 1 or k > n:
        raise DegenerateEmbedding(f"cannot form {k} clusters from {n} rows")
    if np.unique(points, axis=0).shape[0] < k:
        raise DegenerateEmbedding(f"fewer than {k} distinct rows")
    starts = rng.derive(cfg.seed, np.arange(cfg.restarts)) % np.uint64(n)
    best = None
    for r, start in enumerate(starts.tolist()):
        seeds = farthest_first(points, k, int(start))
        labels, inertia, history = _lloyd(points, k, seeds, cfg)
        if best is None or inertia < best.inertia:
            part = Partition(tuple(labels.tolist()), k).canonical()
            best = KMeansResult(part, inertia, tuple(history), r)
    return best


def kmeans_rows(e: SpectralEmbedding, k: int, cfg: RoundingConfig = RoundingConfig()) -> Partition:
    return kmeans(e.vectors, k, cfg).partition


def _mean_similarity(w: np.ndarray, labels: np.ndarray, sizes: np.ndarray, i: int) -> np.ndarray:
    """Mean similarity of vertex ``i`` to each cluster, leaving ``i`` out of its own cluster."""
    k = sizes.size
    sums = np.bincount(labels, weights=w[i], minlength=k)
    counts = sizes.astype(np.float64)
    own = labels[i]
    sums[own] -= w[i, i]
    counts[own] -= 1
    with np.errstate(invalid="ignore", divide="ignore"):
        scores = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    return scores


def mean_similarity_score(g: AffinityGraph, p: Partition) -> float:
    """Sum over vertices of their mean similarity to the rest of their own cluster."""
    require_unipartite(g)
    labels = np.array(p.assignment)
    sizes = np.bincount(labels, minlength=p.k)
    return float(sum(_mean_similarity(g.matrix, labels, sizes, i)[labels[i]] for i in range(len(labels))))


def graph_kmeans_sweep(g: AffinityGraph, p: Partition) -> Partition:
    """One pass in ascending vertex order moving each vertex to its most similar cluster.

    A vertex moves only when another cluster is strictly better (lowest id
    among equals), and never out of a singleton cluster.
    """
    require_unipartite(g)
    w = np.abs(g.matrix)
    if len(p) != w.shape[0]:
        raise DimensionMismatch(f"partition covers {len(p)} vertices, graph has {w.shape[0]}")
    labels = np.array(p.assignment)
    sizes = np.bincount(labels, minlength=p.k)
    for i in range(len(labels)):
        own = labels[i]
        if sizes[own] == 1:
            continue
        scores = _mean_similarity(w, labels, sizes, i)
        best = int(np.argmax(scores))
        if scores[best] > scores[own]:
            sizes[own] -= 1
            sizes[best] += 1
            labels[i] = best
    return Partition(tuple(labels.tolist()), p.k)


def graph_kmeans_assign(g: AffinityGraph, p: Partition, max_iters: int = 100) -> Partition:
    """Iterate :func:`graph_kmeans_sweep` to a fixed point.

    A sweep that would lower :func:`mean_similarity_score` is discarded and
    iteration stops there, so the score never decreases.
    """
    current = p
    score = mean_similarity_score(g, current)
    for _ in range(max_iters):
        nxt = graph_kmeans_sweep(g, current)
        if nxt == current:
            break
        nxt_score = mean_similarity_score(g, nxt)
        if nxt_score < score:
            break
        current, score = nxt, nxt_score
    return current
