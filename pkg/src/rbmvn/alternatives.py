"""Catalog of sampling distributions for simulation and power studies.

Names are lowercase slugs.  Every generator takes (n, rng) and returns
an (n, m) float array; dimensions are fixed per entry except for the
Pearson-VII family, which is parameterized by its tail index as in
"pvii-1", "pvii-10".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidConfigError
from .linalg import cholesky

A2 = np.array([[1.0, 0.2], [0.2, 1.0]])

# The lognormal's log-scale covariance: printed sources give an
# indefinite matrix here; the off-diagonal is kept and the second
# variance raised to 0.25 to make it a valid covariance.
B2 = np.array([[0.25, 0.2], [0.2, 0.25]])

_CHOL_A2 = cholesky(A2)
_CHOL_B2 = cholesky(B2)


def _n2_i(n, rng):
    return rng.standard_normal((n, 2))


def _n2_a2(n, rng):
    return rng.standard_normal((n, 2)) @ _CHOL_A2.T


def _ln2_b2(n, rng):
    return np.exp(rng.standard_normal((n, 2)) @ _CHOL_B2.T)


def _t5_i2(n, rng):
    z = rng.standard_normal((n, 2))
    w = rng.chisquare(5, n)
    return z / np.sqrt(w / 5.0)[:, None]


def _exp_exp(n, rng):
    # independent exponentials with rates 1/2 and 1/4
    out = np.empty((n, 2))
    out[:, 0] = rng.exponential(scale=2.0, size=n)
    out[:, 1] = rng.exponential(scale=4.0, size=n)
    return out


def _beta_beta(n, rng):
    out = np.empty((n, 2))
    out[:, 0] = rng.beta(1.0, 2.0, size=n)
    out[:, 1] = rng.beta(2.0, 1.0, size=n)
    return out


def _nmix1(n, rng):
    out = rng.standard_normal((n, 2))
    shifted = rng.random(n) < 0.1
    out[shifted] += 3.0
    return out


def _nmix2(n, rng):
    out = np.empty((n, 2))
    base = rng.standard_normal((n, 2))
    spherical = rng.random(n) < 0.1
    out[spherical] = base[spherical]
    out[~spherical] = base[~spherical] @ _CHOL_A2.T
    return out


def _spherical_ln(n, rng):
    theta = rng.uniform(0.0, 2.0 * math.pi, n)
    radius = rng.lognormal(mean=0.0, sigma=0.5, size=n)
    return radius[:, None] * np.column_stack((np.cos(theta), np.sin(theta)))


def _chisq5_sq(n, rng):
    return rng.chisquare(5, (n, 2))


def _n_chisq5(n, rng):
    return np.column_stack((rng.standard_normal(n), rng.chisquare(5, n)))


def _n_t3(n, rng):
    return np.column_stack((rng.standard_normal(n), rng.standard_t(3, n)))


def _pvii(tail: float) -> Callable:
    def gen(n, rng):
        return 1.0 + np.column_stack((rng.standard_t(tail, n),
                                      rng.standard_t(tail, n)))

    return gen


@dataclass(frozen=True)
class Alternative:
    name: str
    dim: int
    normal: bool               # whether the law actually is multivariate normal
    generator: Callable
    description: str


_CATALOG = {
    "n2-i": Alternative("n2-i", 2, True, _n2_i,
                        "bivariate standard normal"),
    "n2-a2": Alternative("n2-a2", 2, True, _n2_a2,
                         "bivariate normal, correlation 0.2"),
    "ln2-b2": Alternative("ln2-b2", 2, False, _ln2_b2,
                          "bivariate lognormal"),
    "t5-i2": Alternative("t5-i2", 2, False, _t5_i2,
                         "bivariate t with 5 degrees of freedom"),
    "exp-exp": Alternative("exp-exp", 2, False, _exp_exp,
                           "independent exponentials, rates 1/2 and 1/4"),
    "beta-beta": Alternative("beta-beta", 2, False, _beta_beta,
                             "independent Beta(1,2) and Beta(2,1)"),
    "nmix1": Alternative("nmix1", 2, False, _nmix1,
                         "normal mixture with a shifted 10% component"),
    "nmix2": Alternative("nmix2", 2, False, _nmix2,
                         "normal mixture differing only in correlation"),
    "spherical-ln": Alternative("spherical-ln", 2, False, _spherical_ln,
                                "uniform direction, lognormal radius"),
    "chisq5-sq": Alternative("chisq5-sq", 2, False, _chisq5_sq,
                             "independent chi-square(5) pair"),
    "n-chisq5": Alternative("n-chisq5", 2, False, _n_chisq5,
                            "normal paired with chi-square(5)"),
    "n-t3": Alternative("n-t3", 2, False, _n_t3,
                        "normal paired with t(3)"),
}


def list_alternatives() -> list[str]:
    return sorted(_CATALOG) + ["pvii-<tail>"]


def get_alternative(name: str) -> Alternative:
    key = name.strip().lower()
    if key in _CATALOG:
        return _CATALOG[key]
    if key.startswith("pvii-"):
        try:
            tail = float(key[5:])
        except ValueError:
            tail = -1.0
        if tail <= 0.0:
            raise InvalidConfigError(
                f"bad Pearson-VII tail index in {name!r}; use e.g. pvii-10")
        return Alternative(key, 2, False, _pvii(tail),
                           f"independent shifted t({tail:g}) pair")
    raise InvalidConfigError(
        f"unknown distribution {name!r}; available: "
        + ", ".join(list_alternatives()))


def generate(name: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an (n, m) sample from the named catalog entry."""
    if n < 1:
        raise InvalidConfigError("n must be >= 1")
    return np.asarray(get_alternative(name).generator(n, rng), dtype=np.float64)
