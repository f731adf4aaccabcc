"""End-to-end clustering: graph construction, embedding, rounding, scoring."""
from __future__ import annotations

import dataclasses
import time

import numpy as np

from .engine import embed
from .graph import AffinityGraph, ObjectiveSpec, discrete_objective
from .kernels import KernelSpec, build_affinity
from .matrixio import RunReport
from .rounding import RoundingConfig, kmeans_rows

GRAPH_KINDS = ("uni", "bi", "bi-direct", "bi-augmented", "dir")


def build_graph(matrix, kind: str) -> AffinityGraph:
    if kind == "uni":
        return AffinityGraph.unipartite(matrix)
    if kind == "dir":
        return AffinityGraph.directed(matrix)
    if kind in ("bi", "bi-direct", "bi-augmented"):
        return AffinityGraph.bipartite(matrix)
    raise ValueError(f"unknown graph kind {kind!r}; expected one of {GRAPH_KINDS}")


def cluster(
    matrix,
    kind: str,
    objective: str,
    k: int,
    seed: int = 0,
    phi=None,
    kernel: KernelSpec | None = None,
    regularize: bool = False,
    clamp_negative_kernel: bool = False,
    rounding: RoundingConfig | None = None,
    timings: bool = False,
) -> RunReport:
    """Cluster one matrix and return the report.

    With ``kernel`` set, ``matrix`` is a feature-by-item data matrix and the
    items (columns) are clustered on the kernel-built item graph. Bipartite
    kinds otherwise co-cluster: assignments ``0..M-1`` are features (rows)
    and ``M..M+N-1`` items (columns). ``"bi"`` means ``"bi-direct"``.
    """
    clock = {}
    t0 = time.perf_counter()
    if kernel is not None:
        if kind in ("dir", "uni"):
            raise ValueError(f"a kernel needs a bipartite data matrix, not kind {kind!r}")
        graph = build_affinity(kernel, matrix, clamp_negative=clamp_negative_kernel)
    else:
        graph = build_graph(matrix, kind)
    route = "augmented" if kind == "bi-augmented" else "direct"
    spec = ObjectiveSpec(objective, None if phi is None else np.asarray(phi, dtype=np.float64), regularize)
    t1 = time.perf_counter()
    emb = embed(graph, spec, k, bipartite_route=route)
    t2 = time.perf_counter()
    cfg = dataclasses.replace(rounding or RoundingConfig(), seed=seed)
    part = kmeans_rows(emb, k, cfg)
    t3 = time.perf_counter()
    score = discrete_objective(graph, spec, part)
    t4 = time.perf_counter()
    if timings:
        clock = {
            "build": (t1 - t0) * 1e3,
            "embed": (t2 - t1) * 1e3,
            "round": (t3 - t2) * 1e3,
            "score": (t4 - t3) * 1e3,
        }
    return RunReport(
        assignments=list(part.assignment),
        k=k,
        kind="kernel" if kernel is not None else kind,
        objective=spec.name.value,
        relaxed_value=emb.relaxed_value,
        discrete_value=score,
        values=[float(v) for v in emb.values],
        row_split=emb.row_split,
        seed=seed,
        timings_ms=clock or None,
    )
