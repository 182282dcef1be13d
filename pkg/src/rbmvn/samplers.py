"""Core random samplers: multivariate normal rows and symmetric Dirichlet
weight vectors that stay well-defined for very small concentration.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def sample_mvn(mean, chol, size, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` rows from N(mean, L L^T).

    Parameters
    ----------
    mean : (m,) array
    chol : (m, m) lower-triangular array
    size : int
    rng : numpy Generator
    """
    mean = np.asarray(mean, dtype=np.float64)
    chol = np.asarray(chol, dtype=np.float64)
    z = rng.standard_normal((size, mean.shape[0]))
    return mean + z @ chol.T


def sample_dirichlet_symmetric(alpha: float, size: int,
                               rng: np.random.Generator) -> np.ndarray:
    """One draw from Dirichlet(alpha, ..., alpha) of length ``size``.

    For alpha < 1 the naive gamma route underflows: most gamma(alpha)
    variates round to zero once alpha is ~1e-3.  We instead use the
    identity G_alpha = G_{alpha+1} * U^{1/alpha} in log space and
    normalize with a max-shift, which keeps the weight vector exact to
    working precision for arbitrarily small alpha.
    """
    if alpha <= 0.0:
        raise DomainError("sample_dirichlet_symmetric requires alpha > 0")
    if size < 1:
        raise DomainError("sample_dirichlet_symmetric requires size >= 1")
    if size == 1:
        return np.ones(1)

    for _ in range(8):
        if alpha < 1.0:
            boosted = rng.standard_gamma(alpha + 1.0, size)
            log_u = np.log(rng.random(size))
            with np.errstate(divide="ignore"):
                log_g = np.log(boosted) + log_u / alpha
        else:
            draws = rng.standard_gamma(alpha, size)
            with np.errstate(divide="ignore"):
                log_g = np.log(draws)
        top = np.max(log_g)
        if not np.isfinite(top):
            continue  # all draws degenerate; resample rather than emit NaN
        w = np.exp(log_g - top)
        total = w.sum()
        if np.isfinite(total) and total > 0.0:
            return w / total
    raise RuntimeError("dirichlet sampling failed to produce finite weights")
