"""Relaxed indicator matrices for unipartite, bipartite and directed graphs.

Each path reduces its graph to a symmetric matrix ``Phi^-1/2 A Phi^-1/2``
and returns its top-k eigenvectors. Any rotation of those columns is an
equally good relaxed optimum; the engine always emits the unrotated one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NegativeEntry, UnsupportedObjective, WrongGraphKind
from .graph import (
    AffinityGraph,
    GraphKind,
    Objective,
    ObjectiveSpec,
    augmented_matrix,
    directed_pair,
    objective_pair,
    regularize_weights,
    table_pair,
)


@dataclass(frozen=True)
class SpectralEmbedding:
    """Relaxed indicator matrix plus its eigen- or singular values.

    For bipartite embeddings ``row_split`` is the number of feature rows
    at the top of ``vectors``; the remaining rows are items.
    """

    vectors: np.ndarray
    values: np.ndarray
    row_split: int | None = None

    @property
    def k(self) -> int:
        return self.vectors.shape[1]

    @property
    def relaxed_value(self) -> float:
        return float(np.sum(self.values) / self.k)


def _eigen_embedding(s: np.ndarray, k: int, row_split: int | None = None) -> SpectralEmbedding:
    dec = linalg.eigh(s, k)
    return SpectralEmbedding(vectors=dec.vectors, values=dec.values, row_split=row_split)


def normalized_unipartite(g: AffinityGraph, spec: ObjectiveSpec) -> np.ndarray:
    affinity, phi = objective_pair(g, spec)
    return linalg.scale_symmetric(affinity, phi)


def embed_unipartite(g: AffinityGraph, spec: ObjectiveSpec, k: int) -> SpectralEmbedding:
    return _eigen_embedding(normalized_unipartite(g, spec), k)


def build_bipartite_m(a) -> np.ndarray:
    a = linalg.as_matrix(a, "A")
    if np.any(a < 0):
        raise NegativeEntry("bipartite data matrix must be nonnegative")
    return augmented_matrix(a)


def bipartite_weights(a: np.ndarray, spec: ObjectiveSpec) -> tuple[np.ndarray, np.ndarray]:
    """Feature-side and item-side weight diagonals for a data matrix."""
    m, n = a.shape
    name = spec.name
    if name in (Objective.NASSOC, Objective.NCUTS):
        phi1 = regularize_weights(a.sum(axis=1), spec.regularize, "feature degree")
        phi2 = regularize_weights(a.sum(axis=0), spec.regularize, "item degree")
    elif name.needs_custom_phi:
        phi = spec.phi_for(m + n)
        phi1, phi2 = phi[:m], phi[m:]
    else:
        phi1, phi2 = np.ones(m), np.ones(n)
    return phi1, phi2


def normalize_bipartite(a, spec: ObjectiveSpec) -> np.ndarray:
    """``Phi1^-1/2 A Phi2^-1/2`` for the association objectives (and NCuts)."""
    a = linalg.as_matrix(a, "A")
    if np.any(a < 0):
        raise NegativeEntry("bipartite data matrix must be nonnegative")
    if spec.name in (Objective.GWCUTS, Objective.RCUTS):
        # Phi - L puts (Phi - D) on the diagonal, which breaks the off-diagonal block form
        raise UnsupportedObjective(
            f"{spec.name.value} has no off-diagonal block form; use the augmented bipartite path"
        )
    phi1, phi2 = bipartite_weights(a, spec)
    return linalg.scale_rect(a, phi1, phi2)


def embed_bipartite_augmented(a, spec: ObjectiveSpec, k: int) -> SpectralEmbedding:
    """Co-clustering embedding from the eigenvectors of the full ``(M+N) x (M+N)`` block matrix.

    Only the top ``min(M, N)`` eigenvalues pair with singular values; past
    that the spectrum is zeros and then the negated singular values.
    """
    m_mat = build_bipartite_m(a)
    n_feat, n_item = np.shape(a)
    k = linalg.check_k(k, min(n_feat, n_item))
    affinity, phi = table_pair(m_mat, spec)
    return _eigen_embedding(linalg.scale_symmetric(affinity, phi), k, row_split=n_feat)


def embed_bipartite_direct(a, spec: ObjectiveSpec, k: int) -> SpectralEmbedding:
    """Co-clustering embedding straight from the SVD of the normalised data matrix.

    Column ``j`` of the result is ``[u_j; v_j] / sqrt(2)``, a unit eigenvector
    of the augmented normalised matrix with eigenvalue ``sigma_j``.
    """
    a_bar = normalize_bipartite(a, spec)
    s = linalg.svd(a_bar, k)
    stacked = np.vstack([s.u, s.v]) / np.sqrt(2.0)
    return SpectralEmbedding(vectors=stacked, values=s.sigma, row_split=a_bar.shape[0])


def row_col_embeddings(a, spec: ObjectiveSpec, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row (feature) and column (item) embeddings from one SVD.

    Returns ``(x_hat, y_hat, sigma)``: the top-k left and right singular
    vectors of the normalised matrix, which are also the top-k eigenvectors
    of its row Gram matrix and column Gram matrix respectively.
    """
    s = linalg.svd(normalize_bipartite(a, spec), k)
    return s.u, s.v, s.sigma


def symmetrize_directed(b, spec: ObjectiveSpec) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric surrogate ``Phi_io^-1/2 (B + B^T) Phi_io^-1/2`` of a directed graph.

    ``Phi_io = sqrt(Phi_in * Phi_out)``; under nassoc/ncuts the in-weight is
    the column sum of ``B`` and the out-weight the row sum. The ratio
    objectives use the identity and the gw* objectives take ``Phi_io``
    from ``spec.custom_phi``. For the cut objectives the matching
    Laplacian correction of ``B + B^T`` is applied first.
    """
    b = linalg.as_matrix(b, "B")
    if b.shape[0] != b.shape[1]:
        raise WrongGraphKind(f"directed affinity must be square, got {b.shape}")
    if np.any(b < 0):
        raise NegativeEntry("directed affinity must be nonnegative")
    affinity, phi_io = directed_pair(b, spec)
    s = linalg.scale_symmetric(affinity, phi_io)
    return 0.5 * (s + s.T), phi_io


def embed_directed(b, spec: ObjectiveSpec, k: int) -> SpectralEmbedding:
    s, _ = symmetrize_directed(b, spec)
    return _eigen_embedding(s, k)


def embed(g: AffinityGraph, spec: ObjectiveSpec, k: int, bipartite_route: str = "direct") -> SpectralEmbedding:
    """Dispatch on graph kind. ``bipartite_route`` is ``"direct"`` or ``"augmented"``."""
    if g.kind is GraphKind.UNIPARTITE:
        return embed_unipartite(g, spec, k)
    if g.kind is GraphKind.DIRECTED:
        return embed_directed(g.matrix, spec, k)
    if bipartite_route == "augmented":
        return embed_bipartite_augmented(g.matrix, spec, k)
    if bipartite_route == "direct":
        return embed_bipartite_direct(g.matrix, spec, k)
    raise ValueError(f"unknown bipartite route {bipartite_route!r}")
