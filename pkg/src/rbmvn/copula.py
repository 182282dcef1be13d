"""Gaussian copula sampling and rank-based correlation estimation.

Dependence is specified by a correlation matrix R.  Sampling maps
correlated standard normals through the normal cdf and then through the
(generalized inverse) marginal quantile functions, so any object or
callable supplying a vectorized quantile works as a margin.

Correlation estimation never touches raw moments of the data: it goes
through Kendall's tau (default), Spearman's rho, or normal scores, with
the first two mapped to the implied normal correlation in closed form.
Pairwise estimates are assembled into a matrix and repaired to positive
definiteness when needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InvalidConfigError, UndefinedCorrelationError
from .linalg import cholesky
from .special import std_normal_cdf, std_normal_quantile

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

CORRELATION_METHODS = ("kendall", "spearman", "gauss-rank")


def _count_inversions_py(values: np.ndarray) -> int:
    work = values.copy()
    buf = np.empty_like(work)
    n = work.size
    swaps = 0
    width = 1
    while width < n:
        for start in range(0, n, 2 * width):
            mid = min(start + width, n)
            end = min(start + 2 * width, n)
            i, j, k = start, mid, start
            while i < mid and j < end:
                if work[j] < work[i]:
                    swaps += mid - i
                    buf[k] = work[j]
                    j += 1
                else:
                    buf[k] = work[i]
                    i += 1
                k += 1
            while i < mid:
                buf[k] = work[i]
                i += 1
                k += 1
            while j < end:
                buf[k] = work[j]
                j += 1
                k += 1
            work[start:end] = buf[start:end]
        width *= 2
    return swaps


if _HAVE_NUMBA:
    _count_inversions = numba.njit(cache=True)(_count_inversions_py)
else:  # pragma: no cover
    _count_inversions = _count_inversions_py


def _tied_pair_count(sorted_values: np.ndarray) -> int:
    # sum of t*(t-1)/2 over runs of equal values in a sorted array
    n = sorted_values.size
    boundaries = np.flatnonzero(sorted_values[1:] != sorted_values[:-1])
    starts = np.concatenate(([0], boundaries + 1))
    ends = np.concatenate((boundaries + 1, [n]))
    runs = ends - starts
    return int(np.sum(runs * (runs - 1) // 2))


def kendall_tau(x: np.ndarray, y: np.ndarray) -> float:
    """Tie-corrected Kendall tau-b in O(n log n).

    Raises UndefinedCorrelationError when either input is constant
    (the tau-b denominator vanishes).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise DomainError("kendall_tau expects two 1-D arrays of equal length")
    n = x.size
    if n < 2:
        raise DomainError("kendall_tau requires at least two observations")

    order = np.lexsort((y, x))
    xs = x[order]
    ys = y[order]

    n0 = n * (n - 1) // 2
    n1 = _tied_pair_count(xs)
    n2 = _tied_pair_count(np.sort(y))
    # joint ties: runs of equal (x, y); xs/ys are sorted lexicographically
    same = (xs[1:] == xs[:-1]) & (ys[1:] == ys[:-1])
    boundaries = np.flatnonzero(~same)
    starts = np.concatenate(([0], boundaries + 1))
    ends = np.concatenate((boundaries + 1, [n]))
    runs = ends - starts
    n3 = int(np.sum(runs * (runs - 1) // 2))

    if n0 == n1 or n0 == n2:
        raise UndefinedCorrelationError(
            "kendall tau undefined: a coordinate is constant")

    swaps = int(_count_inversions(ys.copy()))
    numer = (n0 - n1) + (n0 - n2) - (n0 - n3) - 2 * swaps
    # split sqrt keeps the product from overflowing at large n; the
    # rounding it introduces is clipped back to the valid range
    denom = np.sqrt(float(n0 - n1)) * np.sqrt(float(n0 - n2))
    return float(np.clip(numer / denom, -1.0, 1.0))


def _average_ranks(values: np.ndarray) -> np.ndarray:
    # midranks: ties share the average of the ranks they straddle
    n = values.size
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    boundaries = np.flatnonzero(sorted_vals[1:] != sorted_vals[:-1])
    starts = np.concatenate(([0], boundaries + 1))
    ends = np.concatenate((boundaries + 1, [n]))
    ranks = np.empty(n, dtype=np.float64)
    for s, e in zip(starts, ends):
        ranks[order[s:e]] = 0.5 * (s + e - 1) + 1.0
    return ranks


def spearman_rho(x: np.ndarray, y: np.ndarray) -> float:
    """Spearman rank correlation with midrank tie handling."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise DomainError("spearman_rho expects two 1-D arrays of equal length")
    if x.size < 2:
        raise DomainError("spearman_rho requires at least two observations")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    return _pearson(rx, ry)


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    sx = np.sqrt(np.sum(dx * dx))
    sy = np.sqrt(np.sum(dy * dy))
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError(
            "correlation undefined: a coordinate is constant")
    return float(np.clip(np.sum(dx * dy) / (sx * sy), -1.0, 1.0))


def tau_to_normal_corr(tau) -> np.ndarray | float:
    """Normal correlation implied by Kendall tau: sin(pi tau / 2)."""
    return np.sin(0.5 * np.pi * np.asarray(tau, dtype=np.float64))


def rho_to_normal_corr(rho) -> np.ndarray | float:
    """Normal correlation implied by Spearman rho: 2 sin(pi rho / 6)."""
    return 2.0 * np.sin(np.pi * np.asarray(rho, dtype=np.float64) / 6.0)


def gauss_rank_corr(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson correlation of normal scores rank/(n+1)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise DomainError("gauss_rank_corr expects two 1-D arrays of equal length")
    n = x.size
    if n < 2:
        raise DomainError("gauss_rank_corr requires at least two observations")
    sx = std_normal_quantile(_average_ranks(x) / (n + 1.0))
    sy = std_normal_quantile(_average_ranks(y) / (n + 1.0))
    return _pearson(sx, sy)


def nearest_pd(matrix: np.ndarray, eps: float = 1e-6,
               max_iter: int = 200) -> np.ndarray:
    """Repair a symmetric matrix to a positive definite correlation matrix.

    Eigenvalues are clipped at ``eps`` and the unit diagonal restored by
    symmetric rescaling; the two steps are iterated because rescaling can
    push an eigenvalue back below the floor.  Matrices already positive
    definite (min eigenvalue >= eps) are returned unchanged apart from
    symmetrization.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("nearest_pd expects a square matrix")
    a = 0.5 * (a + a.T)
    d = np.sqrt(np.diag(a))
    if np.any(d <= 0.0) or not np.all(np.isfinite(d)):
        raise DomainError("nearest_pd expects positive diagonal entries")
    a = a / np.outer(d, d)
    np.fill_diagonal(a, 1.0)

    w = np.linalg.eigvalsh(a)
    if w[0] >= eps:
        return a
    for _ in range(max_iter):
        w, v = np.linalg.eigh(a)
        if w[0] >= eps * (1.0 - 1e-9):
            break
        w = np.maximum(w, eps)
        a = (v * w) @ v.T
        a = 0.5 * (a + a.T)
        d = np.sqrt(np.diag(a))
        a = a / np.outer(d, d)
        np.fill_diagonal(a, 1.0)
    else:
        raise RuntimeError("nearest_pd failed to converge")
    return a


def estimate_correlation(data: np.ndarray, method: str = "kendall",
                         eps: float = 1e-6) -> np.ndarray:
    """Rank-based correlation matrix estimate, repaired to be PD.

    ``method`` is one of "kendall", "spearman", "gauss-rank".
    """
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2:
        raise DomainError("estimate_correlation expects an (n, m) array")
    n, m = data.shape
    if n < 2:
        raise DomainError("estimate_correlation requires n >= 2")
    if method not in CORRELATION_METHODS:
        raise InvalidConfigError(f"unknown correlation method: {method!r}")
    out = np.eye(m)
    for i in range(m):
        for j in range(i + 1, m):
            if method == "kendall":
                r = float(tau_to_normal_corr(kendall_tau(data[:, i], data[:, j])))
            elif method == "spearman":
                r = float(rho_to_normal_corr(spearman_rho(data[:, i], data[:, j])))
            else:
                r = gauss_rank_corr(data[:, i], data[:, j])
            out[i, j] = out[j, i] = r
    return nearest_pd(out, eps=eps)


def _quantile_fn(margin) -> Callable:
    if callable(margin):
        return margin
    q = getattr(margin, "quantile", None)
    if q is None:
        raise InvalidConfigError(
            "copula margins must be callables or expose .quantile")
    return q


@dataclass
class CopulaModel:
    """Gaussian copula with arbitrary margins.

    ``margins`` holds one quantile per coordinate: either a callable
    u -> x acting on arrays or an object with a vectorized ``quantile``
    method (e.g. a DPApprox realization).
    """

    margins: Sequence
    correlation: np.ndarray
    _chol: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.correlation = np.asarray(self.correlation, dtype=np.float64)
        m = len(self.margins)
        if self.correlation.shape != (m, m):
            raise InvalidConfigError(
                "correlation shape does not match number of margins")
        self._chol = cholesky(self.correlation)  # raises if not PD

    @property
    def dim(self) -> int:
        return len(self.margins)


def sample_copula(model: CopulaModel, size: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` rows from the copula model."""
    if size < 1:
        raise DomainError("sample_copula requires size >= 1")
    z = rng.standard_normal((size, model.dim)) @ model._chol.T
    u = std_normal_cdf(z)
    # quantile functions only promise u in [0, 1]; cdf already lands there
    out = np.empty((size, model.dim), dtype=np.float64)
    for j in range(model.dim):
        out[:, j] = _quantile_fn(model.margins[j])(u[:, j])
    return out
