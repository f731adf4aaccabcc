"""K-way spectral clustering of unipartite, bipartite and directed graphs by trace maximisation."""
from .engine import (
    SpectralEmbedding,
    embed,
    embed_bipartite_augmented,
    embed_bipartite_direct,
    embed_directed,
    embed_unipartite,
    row_col_embeddings,
    symmetrize_directed,
)
from .errors import SpectralError
from .graph import AffinityGraph, Objective, ObjectiveSpec, Partition, discrete_objective
from .kernels import KernelSpec, build_affinity
from .linalg import eigh, svd
from .pipeline import cluster
from .rounding import RoundingConfig, graph_kmeans_assign, kmeans_rows

__version__ = "0.1.0"

__all__ = [
    "AffinityGraph",
    "KernelSpec",
    "Objective",
    "ObjectiveSpec",
    "Partition",
    "RoundingConfig",
    "SpectralEmbedding",
    "SpectralError",
    "build_affinity",
    "cluster",
    "discrete_objective",
    "eigh",
    "embed",
    "embed_bipartite_augmented",
    "embed_bipartite_direct",
    "embed_directed",
    "embed_unipartite",
    "graph_kmeans_assign",
    "kmeans_rows",
    "row_col_embeddings",
    "svd",
    "symmetrize_directed",
]
