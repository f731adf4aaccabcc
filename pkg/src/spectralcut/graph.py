"""Graphs, partitions and the six association/cut objectives.

Every objective is a ratio ``z^T A z / z^T Phi z`` averaged over clusters,
for an (affinity ``A``, diagonal weight ``Phi``) pair:

    =========  ===========  ======
    objective  affinity     weight
    =========  ===========  ======
    gwassoc    W            Phi
    gwcuts     Phi - L      Phi
    nassoc     W            D
    ncuts      D - L (= W)  D
    rassoc     W            I
    rcuts      I - L        I
    =========  ===========  ======

with ``D`` the degree diagonal and ``L = D - W`` the Laplacian.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyCluster,
    NegativeEntry,
    NonPositiveWeight,
    NotSquare,
    NotSymmetric,
    WrongGraphKind,
    ZeroClusterWeight,
    ZeroDegreeVertex,
)
from .linalg import as_matrix, is_symmetric

REGULARIZATION_EPS = 1e-10


class GraphKind(str, enum.Enum):
    UNIPARTITE = "unipartite"
    BIPARTITE = "bipartite"
    DIRECTED = "directed"


class Objective(str, enum.Enum):
    GWASSOC = "gwassoc"
    GWCUTS = "gwcuts"
    NASSOC = "nassoc"
    NCUTS = "ncuts"
    RASSOC = "rassoc"
    RCUTS = "rcuts"

    @property
    def needs_custom_phi(self) -> bool:
        return self in (Objective.GWASSOC, Objective.GWCUTS)

    @property
    def is_cut(self) -> bool:
        return self in (Objective.GWCUTS, Objective.NCUTS, Objective.RCUTS)


@dataclass(frozen=True)
class AffinityGraph:
    """A validated nonnegative affinity matrix tagged with its graph kind.

    Build with :meth:`unipartite`, :meth:`bipartite` or :meth:`directed`
    rather than the bare constructor.
    """

    kind: GraphKind
    matrix: np.ndarray

    @classmethod
    def unipartite(cls, w) -> AffinityGraph:
        w = as_matrix(w, "W")
        if w.shape[0] != w.shape[1]:
            raise NotSquare(f"unipartite affinity must be square, got {w.shape}")
        _check_nonnegative(w)
        if not is_symmetric(w):
            raise NotSymmetric("unipartite affinity must be symmetric")
        w = 0.5 * (w + w.T)
        return cls(GraphKind.UNIPARTITE, w)

    @classmethod
    def bipartite(cls, a) -> AffinityGraph:
        a = as_matrix(a, "A")
        _check_nonnegative(a)
        return cls(GraphKind.BIPARTITE, a)

    @classmethod
    def directed(cls, b) -> AffinityGraph:
        b = as_matrix(b, "B")
        if b.shape[0] != b.shape[1]:
            raise NotSquare(f"directed affinity must be square, got {b.shape}")
        _check_nonnegative(b)
        return cls(GraphKind.DIRECTED, b)

    @property
    def n_vertices(self) -> int:
        if self.kind is GraphKind.BIPARTITE:
            return sum(self.matrix.shape)
        return self.matrix.shape[0]


def _check_nonnegative(m: np.ndarray) -> None:
    if np.any(m < 0):
        i, j = np.argwhere(m < 0)[0]
        raise NegativeEntry(f"negative affinity {m[i, j]!r} at ({i}, {j})")


@dataclass(frozen=True)
class ObjectiveSpec:
    name: Objective
    custom_phi: np.ndarray | None = None
    regularize: bool = False

    def __post_init__(self):
        object.__setattr__(self, "name", Objective(self.name))
        if self.name.needs_custom_phi:
            if self.custom_phi is None:
                raise NonPositiveWeight(f"{self.name.value} requires a custom weight vector")
            phi = np.asarray(self.custom_phi, dtype=np.float64).ravel()
            if not (np.all(np.isfinite(phi)) and np.all(phi > 0)):
                raise NonPositiveWeight("custom weights must be positive and finite")
            object.__setattr__(self, "custom_phi", phi)
        elif self.custom_phi is not None:
            raise DimensionMismatch(f"{self.name.value} does not take custom weights")

    def phi_for(self, n: int) -> np.ndarray:
        if self.custom_phi.shape != (n,):
            raise DimensionMismatch(f"custom weight length {self.custom_phi.size} != {n} vertices")
        return self.custom_phi


@dataclass(frozen=True)
class Partition:
    """Hard assignment of every vertex to one of ``k`` non-empty clusters."""

    assignment: tuple[int, ...]
    k: int
    _members: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(int(x) for x in self.assignment)
        object.__setattr__(self, "assignment", labels)
        if self.k < 1:
            raise EmptyCluster(f"k must be positive, got {self.k}")
        members = [[] for _ in range(self.k)]
        for vertex, c in enumerate(labels):
            if not 0 <= c < self.k:
                raise EmptyCluster(f"cluster id {c} outside [0, {self.k})")
            members[c].append(vertex)
        empty = [c for c, m in enumerate(members) if not m]
        if empty:
            raise EmptyCluster(f"clusters {empty} have no members")
        object.__setattr__(self, "_members", tuple(tuple(m) for m in members))

    def __len__(self) -> int:
        return len(self.assignment)

    def members(self, c: int) -> tuple[int, ...]:
        return self._members[c]

    def indicator(self) -> np.ndarray:
        """Binary N x k indicator matrix."""
        z = np.zeros((len(self.assignment), self.k))
        z[np.arange(len(self.assignment)), self.assignment] = 1.0
        return z

    def canonical(self) -> Partition:
        """Relabel clusters in order of first appearance."""
        mapping: dict[int, int] = {}
        for c in self.assignment:
            mapping.setdefault(c, len(mapping))
        return Partition(tuple(mapping[c] for c in self.assignment), self.k)

    def blocks(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(m) for m in self._members)


def require_unipartite(g: AffinityGraph) -> None:
    if g.kind is not GraphKind.UNIPARTITE:
        raise WrongGraphKind(f"expected a unipartite graph, got {g.kind.value}")


def degree_matrix(g: AffinityGraph) -> np.ndarray:
    """Row sums of ``W`` (the diagonal of ``D``)."""
    require_unipartite(g)
    return g.matrix.sum(axis=1)


def laplacian(g: AffinityGraph) -> np.ndarray:
    require_unipartite(g)
    return np.diag(degree_matrix(g)) - g.matrix


def regularize_weights(phi: np.ndarray, enabled: bool, what: str = "degree") -> np.ndarray:
    """Add ``REGULARIZATION_EPS`` to zero weights when ``enabled``; otherwise reject them."""
    zero = phi <= 0
    if not zero.any():
        return phi
    if not enabled:
        raise ZeroDegreeVertex(f"vertices {np.flatnonzero(zero).tolist()} have zero {what}")
    return np.where(zero, phi + REGULARIZATION_EPS, phi)


def table_pair(w: np.ndarray, spec: ObjectiveSpec, phi_override: np.ndarray | None = None):
    """Affinity/weight pair for a symmetric affinity ``w``.

    ``phi_override`` replaces the weight diagonal that the objective would
    otherwise derive (used for directed graphs, whose weight is the
    geometric mean of in- and out-degree).
    """
    n = w.shape[0]
    deg = w.sum(axis=1)
    name = spec.name
    if phi_override is not None:
        phi = phi_override
    elif name.needs_custom_phi:
        phi = spec.phi_for(n)
    elif name in (Objective.NASSOC, Objective.NCUTS):
        phi = regularize_weights(deg, spec.regularize)
    else:
        phi = np.ones(n)
    if name in (Objective.GWCUTS, Objective.RCUTS):
        # Phi - L = Phi - D + W
        affinity = w + np.diag(phi - deg)
    else:
        # NCuts: D - L is W itself
        affinity = w.copy()
    return affinity, phi


def objective_pair(g: AffinityGraph, spec: ObjectiveSpec) -> tuple[np.ndarray, np.ndarray]:
    """The (affinity, weight-diagonal) pair that ``spec`` assigns to a unipartite graph."""
    require_unipartite(g)
    return table_pair(g.matrix, spec)


def augmented_matrix(a: np.ndarray) -> np.ndarray:
    """Block matrix ``[[0, A], [A^T, 0]]`` joining feature and item vertices."""
    m, n = a.shape
    out = np.zeros((m + n, m + n))
    out[:m, m:] = a
    out[m:, :m] = a.T
    return out


def directed_pair(b: np.ndarray, spec: ObjectiveSpec) -> tuple[np.ndarray, np.ndarray]:
    """Affinity/weight pair for a directed graph: ``B + B^T`` weighted by ``sqrt(Phi_in Phi_out)``."""
    n = b.shape[0]
    name = spec.name
    if name in (Objective.NASSOC, Objective.NCUTS):
        phi_in = regularize_weights(b.sum(axis=0), spec.regularize, "in-degree")
        phi_out = regularize_weights(b.sum(axis=1), spec.regularize, "out-degree")
        phi_io = np.sqrt(phi_in * phi_out)
    elif name.needs_custom_phi:
        phi_io = spec.phi_for(n)
    else:
        phi_io = np.ones(n)
    return table_pair(b + b.T, spec, phi_override=phi_io)


def symmetric_pair(g: AffinityGraph, spec: ObjectiveSpec) -> tuple[np.ndarray, np.ndarray]:
    """Reduce any graph kind to a symmetric (affinity, weight) pair over all its vertices."""
    if g.kind is GraphKind.UNIPARTITE:
        return objective_pair(g, spec)
    if g.kind is GraphKind.DIRECTED:
        return directed_pair(g.matrix, spec)
    return table_pair(augmented_matrix(g.matrix), spec)


def discrete_objective(g: AffinityGraph, spec: ObjectiveSpec, p: Partition) -> float:
    """Average over clusters of ``z_k^T A z_k / z_k^T Phi z_k`` for the given hard partition."""
    affinity, phi = symmetric_pair(g, spec)
    if len(p) != affinity.shape[0]:
        raise DimensionMismatch(f"partition covers {len(p)} vertices, graph has {affinity.shape[0]}")
    z = p.indicator()
    within = np.einsum("ik,ij,jk->k", z, affinity, z)
    weight = z.T @ phi
    if np.any(weight <= 0):
        raise ZeroClusterWeight(f"clusters {np.flatnonzero(weight <= 0).tolist()} have zero weight")
    return float(np.sum(within / weight) / p.k)
