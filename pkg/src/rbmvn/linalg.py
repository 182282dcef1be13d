"""Small dense linear algebra helpers for covariance-sized matrices."""

from __future__ import annotations

import numpy as np

from .errors import NotPositiveDefiniteError


def cholesky(a: np.ndarray) -> np.ndarray:
    """Lower-triangular Cholesky factor of a symmetric PD matrix.

    Hand-rolled so the failure mode is informative: a non-positive pivot
    raises ``NotPositiveDefiniteError`` carrying the pivot index.  The
    matrices here are m x m with m at most a few dozen, so the O(m^3)
    Python loop is irrelevant next to the Monte Carlo work.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("cholesky expects a square matrix")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-10 * max(1.0, float(np.max(np.abs(a))))):
        raise ValueError("cholesky expects a symmetric matrix")
    m = a.shape[0]
    lower = np.zeros((m, m), dtype=np.float64)
    for j in range(m):
        pivot = a[j, j] - np.dot(lower[j, :j], lower[j, :j])
        if pivot <= 0.0 or not np.isfinite(pivot):
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite (pivot {j})", pivot=j)
        lower[j, j] = np.sqrt(pivot)
        if j + 1 < m:
            lower[j + 1:, j] = (a[j + 1:, j]
                                - lower[j + 1:, :j] @ lower[j, :j]) / lower[j, j]
    return lower


def solve_lower(lower: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Apply L^-1 to each row of ``rows`` (whitening transform).

    Equivalent to solving L z = x for every row x; implemented as a
    single triangular inversion plus one matmul since m is tiny.
    """
    m = lower.shape[0]
    inv = np.zeros_like(lower)
    for j in range(m):
        e = np.zeros(m)
        e[j] = 1.0
        for i in range(m):
            e[i] = (e[i] - np.dot(lower[i, :i], e[:i])) / lower[i, i]
        inv[:, j] = e
    return rows @ inv.T


def cov_to_corr(cov: np.ndarray) -> np.ndarray:
    """Rescale a covariance matrix to unit diagonal."""
    d = np.sqrt(np.diag(cov))
    corr = cov / np.outer(d, d)
    np.fill_diagonal(corr, 1.0)
    return corr
