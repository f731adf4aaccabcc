"""Kernel-built item affinities for the indirect bipartite treatment.

Items are the *columns* of a feature-by-item data matrix. The affinity
between two distinct items is a kernel of their columns; the diagonal is
always zero.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NegativeAffinity, NonFiniteEntry, SpectralError
from .graph import AffinityGraph
from .linalg import as_matrix


class KernelKind(str, enum.Enum):
    POLYNOMIAL = "poly"
    GAUSSIAN = "gauss"
    SIGMOID = "sigmoid"


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind
    c: float = 0.0
    d: int = 1
    alpha: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if self.kind is KernelKind.GAUSSIAN and not self.alpha > 0:
            raise SpectralError(f"gaussian alpha must be positive, got {self.alpha}")
        if self.kind is KernelKind.POLYNOMIAL and (int(self.d) != self.d or self.d < 1):
            raise SpectralError(f"polynomial degree must be a positive integer, got {self.d}")

    @classmethod
    def polynomial(cls, c: float, d: int) -> KernelSpec:
        return cls(KernelKind.POLYNOMIAL, c=c, d=int(d))

    @classmethod
    def gaussian(cls, alpha: float) -> KernelSpec:
        return cls(KernelKind.GAUSSIAN, alpha=alpha)

    @classmethod
    def sigmoid(cls, c: float, theta: float) -> KernelSpec:
        return cls(KernelKind.SIGMOID, c=c, theta=theta)


def kernel_value(spec: KernelSpec, a_i, a_j) -> float:
    """kappa(a_i, a_j) for one pair of vectors.

    polynomial ``(a_i.a_j + c)^d``, gaussian ``exp(-|a_i - a_j|^2 / 2 alpha^2)``,
    sigmoid ``tanh(c a_i.a_j + theta)``.
    """
    x = np.asarray(a_i, dtype=np.float64).ravel()
    y = np.asarray(a_j, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DimensionMismatch(f"vector lengths differ: {x.size} vs {y.size}")
    if spec.kind is KernelKind.GAUSSIAN:
        diff = x - y
        return math.exp(-float(np.sum(diff * diff)) / (2.0 * spec.alpha**2))
    dot = float(np.sum(x * y))
    if spec.kind is KernelKind.POLYNOMIAL:
        with np.errstate(over="ignore"):
            return float(np.float64(dot + spec.c) ** spec.d)
    return math.tanh(spec.c * dot + spec.theta)


def build_affinity(spec: KernelSpec, data, clamp_negative: bool = True) -> AffinityGraph:
    """Unipartite item graph ``V`` with ``V_ij = kappa(col_i, col_j)`` off the diagonal.

    Negative kernel values are clamped to zero (with a warning giving how
    many) when ``clamp_negative`` is set, and raise :class:`NegativeAffinity`
    otherwise.
    """
    data = as_matrix(data, "data")
    n = data.shape[1]
    if n < 2:
        raise DimensionMismatch("need at least two item columns")
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            v[i, j] = v[j, i] = kernel_value(spec, data[:, i], data[:, j])
    if not np.all(np.isfinite(v)):
        raise NonFiniteEntry("kernel produced non-finite values")
    negative = v < 0
    if negative.any():
        count = int(np.count_nonzero(negative) // 2)
        if not clamp_negative:
            raise NegativeAffinity(f"{count} item pairs have negative kernel value")
        warnings.warn(f"clamped {count} negative kernel values to zero", RuntimeWarning, stacklevel=2)
        v[negative] = 0.0
    return AffinityGraph.unipartite(v)
