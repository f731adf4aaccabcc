"""Seeded self-verification suites behind ``spectralcut verify``.

Instance ``i`` of every suite draws its data from the SplitMix64 stream keyed
by ``derive(seed, i)``, so a (suite, seed) pair always checks the same
matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, oracle, rng
from .engine import embed_bipartite_augmented, embed_bipartite_direct, normalize_bipartite, row_col_embeddings
from .errors import SpectralError, TooLarge
from .graph import AffinityGraph, Objective, ObjectiveSpec

TOL = 1e-9
SUITES = ("kyfan", "bipartite-equiv", "rowcol", "relaxation-gap")


@dataclass
class Check:
    name: str
    tolerance: float
    worst: float = 0.0
    count: int = 0

    def record(self, residual: float) -> None:
        self.count += 1
        self.worst = max(self.worst, float(residual))

    @property
    def passed(self) -> bool:
        return self.count > 0 and self.worst <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} worst={self.worst:.3e} tol={self.tolerance:.0e} n={self.count}"


def random_symmetric(key, n: int) -> np.ndarray:
    g = rng.gaussian(key, n * n).reshape(n, n)
    return 0.5 * (g + g.T)


def random_nonnegative(key, rows: int, cols: int) -> np.ndarray:
    return rng.uniform(key, rows * cols).reshape(rows, cols)


def _keys(seed: int, instances: int) -> list[int]:
    return [int(x) for x in rng.derive(seed, np.arange(instances))]


def suite_kyfan(seed: int, trials: int, instances: int, max_n: int) -> list[Check]:
    sym_eq = Check("kyfan.symmetric.eigen_trace_equals_eigen_sum", TOL)
    sym_dom = Check("kyfan.symmetric.random_frames_dominated", TOL)
    rect_eq = Check("kyfan.rect.svd_trace_equals_sigma_sum", TOL)
    rect_dual = Check("kyfan.rect.svd_route_matches_psi_route", TOL)
    rect_dom = Check("kyfan.rect.random_frames_dominated", TOL)
    n = max(2, min(8, max_n))
    for i, key in enumerate(_keys(seed, instances)):
        h = random_symmetric(key, n)
        for k in sorted({1, 2, max(1, n // 2)}):
            rep = oracle.kyfan_symmetric_check(h, k, trials, key)
            sym_eq.record(abs(rep.eigen_trace - rep.eigenvalue_sum))
            sym_dom.record(max(0.0, rep.max_random_trace - rep.eigen_trace))
        r = random_nonnegative(rng.derive(key, 1), n, max(1, n - 1)) - 0.5
        for k in sorted({1, 2}):
            rep = oracle.kyfan_rect_check(r, k, trials, key)
            rect_eq.record(abs(rep.svd_trace - rep.singular_value_sum))
            rect_dual.record(abs(rep.svd_trace - rep.psi_trace))
            rect_dom.record(max(0.0, rep.max_random_trace - rep.svd_trace))
    return [sym_eq, sym_dom, rect_eq, rect_dual, rect_dom]


def suite_bipartite_equiv(seed: int, trials: int, instances: int, max_n: int) -> list[Check]:
    values = Check("bipartite.augmented_eigenvalues_equal_sigma", TOL)
    residual = Check("bipartite.stacked_singular_vectors_are_eigenvectors", TOL)
    spectrum = Check("bipartite.augmented_spectrum_is_plus_minus_sigma", TOL)
    spec = ObjectiveSpec(Objective.NASSOC)
    for key in _keys(seed, instances):
        a = random_nonnegative(key, 6, 4)
        a_bar = normalize_bipartite(a, spec)
        m_bar = np.zeros((10, 10))
        m_bar[:6, 6:] = a_bar
        m_bar[6:, :6] = a_bar.T
        for k in range(1, 5):
            aug = embed_bipartite_augmented(a, spec, k)
            direct = embed_bipartite_direct(a, spec, k)
            values.record(np.max(np.abs(aug.values - direct.values)))
            res = m_bar @ direct.vectors - direct.vectors * direct.values
            residual.record(np.max(np.sqrt(np.sum(res * res, axis=0))))
        spectrum.record(oracle.augmented_spectrum_deviation(a, spec))
    return [values, residual, spectrum]


def suite_rowcol(seed: int, trials: int, instances: int, max_n: int) -> list[Check]:
    row_gram = Check("rowcol.sigma_squared_matches_row_gram_eigenvalues", TOL)
    col_gram = Check("rowcol.sigma_squared_matches_col_gram_eigenvalues", TOL)
    traces = Check("rowcol.gram_traces_equal_sum_sigma_squared", TOL)
    cross = Check("rowcol.cross_derived_columns_match_up_to_sign", TOL)
    spec = ObjectiveSpec(Objective.NASSOC)
    for key in _keys(seed, instances):
        a = random_nonnegative(key, 5, 4)
        a_bar = normalize_bipartite(a, spec)
        k = 3
        x_hat, y_hat, sigma = row_col_embeddings(a, spec, k)
        sq = sigma**2
        scale = max(sq[0], 1e-300)
        row_vals = linalg.eigh(a_bar @ a_bar.T, k).values
        col = linalg.eigh(a_bar.T @ a_bar, k)
        row_gram.record(np.max(np.abs(row_vals - sq)) / scale)
        col_gram.record(np.max(np.abs(col.values - sq)) / scale)
        tx = np.sum(x_hat * (a_bar @ (a_bar.T @ x_hat)))
        ty = np.sum(y_hat * (a_bar.T @ (a_bar @ y_hat)))
        traces.record(max(abs(tx - sq.sum()), abs(ty - sq.sum())))
        gaps = -np.diff(sigma)
        if np.all(gaps > 1e-6):
            derived = (a_bar.T @ x_hat) / sigma
            cross.record(oracle.sign_aligned_distance(derived, col.vectors))
    return [row_gram, col_gram, traces, cross]


def random_graph(key, n: int, p: float = 0.5) -> np.ndarray:
    """Unweighted random graph; a spanning path is added so every vertex has an edge."""
    u = rng.uniform(key, n * n).reshape(n, n)
    w = np.triu((u < p).astype(float), 1)
    w[np.arange(n - 1), np.arange(1, n)] = 1.0
    return w + w.T


def objective_specs(key, n: int) -> list[ObjectiveSpec]:
    phi = 0.5 + 1.5 * rng.uniform(rng.derive(key, 7), n)
    return [
        ObjectiveSpec(name, custom_phi=phi if name.needs_custom_phi else None, regularize=True)
        for name in Objective
    ]


def suite_relaxation_gap(seed: int, trials: int, instances: int, max_n: int) -> list[Check]:
    gap = Check("relaxation.relaxed_bounds_discrete_optimum", TOL)
    for i, key in enumerate(_keys(seed, instances)):
        n = 3 + i % (max_n - 2) if max_n > 3 else max_n
        g = AffinityGraph.unipartite(random_graph(key, n))
        for spec in objective_specs(key, n):
            for k in (2, 3):
                if k > n:
                    continue
                rep = oracle.relaxation_gap(g, spec, k)
                gap.record(max(0.0, -rep.gap))
    return [gap]


_RUNNERS = {
    "kyfan": suite_kyfan,
    "bipartite-equiv": suite_bipartite_equiv,
    "rowcol": suite_rowcol,
    "relaxation-gap": suite_relaxation_gap,
}


def run(suite: str, seed: int = 0, trials: int = 1000, instances: int = 20, max_n: int = 8) -> list[Check]:
    if max_n > oracle.MAX_ENUMERATION_N:
        raise TooLarge(f"--max-n is capped at {oracle.MAX_ENUMERATION_N}, got {max_n}")
    if max_n < 3:
        raise SpectralError(f"--max-n must be at least 3, got {max_n}")
    names = SUITES if suite == "all" else (suite,)
    checks: list[Check] = []
    for name in names:
        checks.extend(_RUNNERS[name](seed, trials, instances, max_n))
    return checks
