"""Dense real linear algebra on ``numpy.float64`` arrays.

The eigensolver is a cyclic Jacobi sweep written with elementwise numpy
operations only (no BLAS calls), so results are bit-identical from run to
run regardless of threading. The SVD is layered on top of it through the
Gram matrix of the thinner side.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    KOutOfRange,
    NoConvergence,
    NonFiniteEntry,
    NonPositiveWeight,
    NotSquare,
    NotSymmetric,
    DimensionMismatch,
)

SYMMETRY_RTOL = 1e-12
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
SIGN_EPS = 1e-12
RANK_EPS = 1e-12


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite, non-empty 2-D float64 array (always a copy)."""
    arr = np.array(m, dtype=np.float64, copy=True)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name} must have at least one row and column")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntry(f"{name} contains NaN or Inf")
    return arr


def frobenius(m: np.ndarray) -> float:
    return float(np.sqrt(np.sum(m * m)))


def is_symmetric(m: np.ndarray, rtol: float = SYMMETRY_RTOL) -> bool:
    if m.shape[0] != m.shape[1]:
        return False
    scale = frobenius(m)
    return float(np.max(np.abs(m - m.T))) <= rtol * scale


def check_k(k: int, upper: int) -> int:
    if isinstance(k, bool) or int(k) != k:
        raise KOutOfRange(f"k must be an integer, got {k!r}")
    k = int(k)
    if not 1 <= k <= upper:
        raise KOutOfRange(f"k={k} outside [1, {upper}]")
    return k


def _fix_signs(vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Flip columns so the first entry with |x| > SIGN_EPS is positive."""
    signs = np.ones(vectors.shape[1])
    for j in range(vectors.shape[1]):
        nz = np.flatnonzero(np.abs(vectors[:, j]) > SIGN_EPS)
        if nz.size and vectors[nz[0], j] < 0:
            signs[j] = -1.0
    return vectors * signs, signs


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class SvdResult:
    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


def jacobi_eigensystem(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full unsorted eigensystem of a symmetric matrix by cyclic Jacobi rotations.

    Stops once the off-diagonal Frobenius norm drops to ``JACOBI_TOL`` times
    the norm of the input; raises :class:`NoConvergence` after
    ``JACOBI_MAX_SWEEPS`` sweeps.
    """
    a = 0.5 * (m + m.T)
    n = a.shape[0]
    v = np.eye(n)
    norm = frobenius(a)
    if norm == 0.0 or n == 1:
        return np.diag(a).copy(), v
    target = JACOBI_TOL * norm
    for _ in range(JACOBI_MAX_SWEEPS):
        off = a - np.diag(np.diag(a))
        if np.sqrt(np.sum(off * off)) <= target:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    # theta = diff / 2apq would overflow when squared; t ~ 1 / (2 theta)
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    off = a - np.diag(np.diag(a))
    if np.sqrt(np.sum(off * off)) <= target:
        return np.diag(a).copy(), v
    raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def eigh(m, k: int | None = None) -> EigenDecomposition:
    """Top-``k`` eigenpairs of a symmetric matrix, by algebraic value.

    Args:
        m: square symmetric matrix (asymmetry up to 1e-12 relative is
            tolerated and averaged away).
        k: number of pairs to return; ``None`` means all of them.

    Returns:
        EigenDecomposition with ``values`` descending and unit ``vectors``
        columns, each sign-normalised so its first clearly non-zero entry
        is positive.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got {m.shape}")
    if not is_symmetric(m):
        raise NotSymmetric("matrix is not symmetric within tolerance")
    n = m.shape[0]
    k = n if k is None else check_k(k, n)
    values, vectors = jacobi_eigensystem(m)
    order = np.argsort(-values, kind="stable")[:k]
    vecs, _ = _fix_signs(vectors[:, order])
    return EigenDecomposition(values=values[order], vectors=vecs)


def _complete_basis(q: np.ndarray, j: int) -> np.ndarray:
    """Unit vector orthogonal to columns ``q[:, :j]``, from the first usable standard basis vector."""
    n = q.shape[0]
    for i in range(n):
        cand = np.zeros(n)
        cand[i] = 1.0
        for _ in range(2):
            for c in range(j):
                cand = cand - np.sum(q[:, c] * cand) * q[:, c]
        norm = np.sqrt(np.sum(cand * cand))
        if norm > 1e-6:
            return cand / norm
    raise NoConvergence("could not complete orthonormal basis")


def svd(m, k: int | None = None) -> SvdResult:
    """Top-``k`` singular triplets via the eigensystem of the thinner Gram matrix.

    The factor on the thin side comes straight from :func:`eigh`; the other
    factor is ``A v / sigma`` re-orthogonalised against earlier columns.
    Directions whose singular value is at most ``RANK_EPS * sigma_1`` are
    filled in by Gram-Schmidt on the standard basis.
    """
    a = as_matrix(m)
    rows, cols = a.shape
    k = min(rows, cols) if k is None else check_k(k, min(rows, cols))
    transpose = rows < cols
    work = a.T if transpose else a
    # work is tall: work = P S Q^T with Q from eigh(work^T work)
    gram = work.T @ work
    gram = 0.5 * (gram + gram.T)
    q_full = eigh(gram).vectors[:, :k]
    wq = work @ q_full
    sigma = np.sqrt(np.sum(wq * wq, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma, q_full, wq = sigma[order], q_full[:, order], wq[:, order]
    p = np.zeros((work.shape[0], k))
    cutoff = RANK_EPS * sigma[0]
    for j in range(k):
        if sigma[j] <= cutoff or sigma[j] == 0.0:
            sigma[j] = 0.0
            p[:, j] = _complete_basis(p, j)
            continue
        col = wq[:, j] / sigma[j]
        for c in range(j):
            col = col - np.sum(p[:, c] * col) * p[:, c]
        p[:, j] = col / np.sqrt(np.sum(col * col))
    if transpose:
        u, v = q_full, p
    else:
        u, v = p, q_full
    u, signs = _fix_signs(u)
    v = v * signs
    return SvdResult(u=u, sigma=sigma, v=v)


def truncated_reconstruction(s: SvdResult) -> np.ndarray:
    """Rank-k matrix ``U_k diag(sigma) V_k^T``."""
    return (s.u * s.sigma) @ s.v.T


def scale_symmetric(m, phi_diag) -> np.ndarray:
    """Return ``diag(phi)^-1/2 @ m @ diag(phi)^-1/2``."""
    m = as_matrix(m)
    phi = np.asarray(phi_diag, dtype=np.float64)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got {m.shape}")
    if phi.shape != (m.shape[0],):
        raise DimensionMismatch(f"weight vector length {phi.size} != {m.shape[0]}")
    if not np.all(phi > 0) or not np.all(np.isfinite(phi)):
        raise NonPositiveWeight("all diagonal weights must be positive and finite")
    # phi_i * phi_j is commutative, so symmetric input stays exactly symmetric
    return m / np.sqrt(phi[:, None] * phi[None, :])


def scale_rect(m, row_phi, col_phi) -> np.ndarray:
    """Rectangular analogue: ``diag(row_phi)^-1/2 @ m @ diag(col_phi)^-1/2``."""
    m = as_matrix(m)
    r = np.asarray(row_phi, dtype=np.float64)
    c = np.asarray(col_phi, dtype=np.float64)
    if r.shape != (m.shape[0],) or c.shape != (m.shape[1],):
        raise DimensionMismatch("weight vector lengths do not match matrix shape")
    if not (np.all(r > 0) and np.all(c > 0)):
        raise NonPositiveWeight("all diagonal weights must be positive")
    return m / np.sqrt(r)[:, None] / np.sqrt(c)[None, :]
