"""Relative belief ratio for "distance equals zero" from simulated draws.

Prior and posterior Monte Carlo draws of a nonnegative distance are
discretized on a common grid: bin edges at the prior i/M quantiles with
the first edge pinned at zero.  Density ratios are then bin counts;
the ratio at zero is read off the first i0 bins, and the evidence is
calibrated by the posterior probability of landing in a bin whose ratio
is at most the ratio at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError, InvalidConfigError

_RB_TIE_REL = 1e-12


class Verdict(str, Enum):
    EVIDENCE_FOR = "evidence_for"
    EVIDENCE_AGAINST = "evidence_against"
    NO_EVIDENCE = "no_evidence"


@dataclass(frozen=True)
class DistanceSamples:
    """Clamped Monte Carlo distance draws plus clamp bookkeeping."""

    values: np.ndarray
    clamped: int

    @property
    def size(self) -> int:
        return self.values.size


def clamp_distances(raw) -> DistanceSamples:
    """Clip negative Monte Carlo estimates of the distance to zero.

    The estimator of the squared distance is unbiased but not sign
    constrained, so small negative values occur legitimately; they are
    counted so callers can surface the number in diagnostics.
    """
    values = np.asarray(raw, dtype=np.float64)
    if values.ndim != 1 or values.size < 1:
        raise DomainError("expected a nonempty 1-D array of distances")
    if not np.all(np.isfinite(values)):
        raise DomainError("distance draws must be finite")
    negative = int(np.sum(values < 0.0))
    if negative:
        values = np.maximum(values, 0.0)
    return DistanceSamples(values=values, clamped=negative)


def _counts_at(sorted_values: np.ndarray, t) -> np.ndarray:
    return np.searchsorted(sorted_values, t, side="right")


def _prior_quantile(sorted_values: np.ndarray, p: float) -> float:
    # inverse-ecdf quantile: smallest order statistic with cdf >= p
    n = sorted_values.size
    idx = max(int(math.ceil(p * n)) - 1, 0)
    return float(sorted_values[min(idx, n - 1)])


@dataclass(frozen=True)
class RbResult:
    """Binned relative belief estimate for the event "distance = 0"."""

    rb_at_zero: float
    edges: np.ndarray            # length M + 1; edges[0] = 0, edges[M] = prior max
    prior_contents: np.ndarray   # length M, sums to one
    posterior_contents: np.ndarray
    per_bin_rb: np.ndarray       # posterior/prior content ratio per bin
    m_bins: int
    i0: int
    merged_bins: int             # bins sharing an edge with a neighbor
    field_metadata: dict = field(default_factory=dict, compare=False)


def estimate_rb(prior: DistanceSamples, posterior: DistanceSamples,
                m_bins: int = 20, i0: int = 1) -> RbResult:
    """Estimate the relative belief ratio at zero distance.

    Edges are prior quantiles at i/M (first edge forced to 0, last edge
    the prior maximum; mass above the prior maximum is attributed to the
    final bin so the posterior contents form a probability vector).  The
    ratio at zero is the posterior mass of the first i0 bins over their
    prior share i0/M.  Duplicate edges (heavily tied prior draws) merge
    bins; merged bins keep their combined prior share in the ratio.
    """
    if m_bins < 2:
        raise InvalidConfigError("m_bins must be >= 2")
    if not 1 <= i0 < m_bins:
        raise InvalidConfigError("i0 must satisfy 1 <= i0 < m_bins")
    if prior.size < m_bins or posterior.size < m_bins:
        raise InvalidConfigError("need at least m_bins draws on each side")

    prior_sorted = np.sort(prior.values)
    post_sorted = np.sort(posterior.values)

    edges = np.empty(m_bins + 1)
    edges[0] = 0.0
    for i in range(1, m_bins):
        edges[i] = _prior_quantile(prior_sorted, i / m_bins)
    edges[m_bins] = float(prior_sorted[-1])
    edges = np.maximum.accumulate(edges)  # guard against numeric inversion

    # integer counts at the edges keep bin contents exact ratios
    prior_at = _counts_at(prior_sorted, edges)
    post_at = _counts_at(post_sorted, edges)
    prior_at[0] = 0
    post_at[0] = 0  # everything below the first interior edge is bin 0
    prior_at[m_bins] = prior.size
    post_at[m_bins] = posterior.size  # open-ended final bin

    prior_contents = np.diff(prior_at) / prior.size
    post_contents = np.diff(post_at) / posterior.size

    merged = int(np.sum(np.diff(edges[:m_bins]) == 0.0))

    with np.errstate(divide="ignore", invalid="ignore"):
        per_bin_rb = np.where(prior_contents > 0.0,
                              post_contents / np.maximum(prior_contents, 1e-300),
                              np.inf)
    per_bin_rb = np.where((prior_contents == 0.0) & (post_contents == 0.0),
                          0.0, per_bin_rb)

    rb_at_zero = float(m_bins / i0 * (post_at[i0] / posterior.size))

    return RbResult(rb_at_zero=rb_at_zero, edges=edges,
                    prior_contents=prior_contents,
                    posterior_contents=post_contents,
                    per_bin_rb=per_bin_rb, m_bins=m_bins, i0=i0,
                    merged_bins=merged)


def estimate_strength(result: RbResult) -> float:
    """Posterior probability of a ratio no larger than the ratio at zero.

    Sums posterior bin contents over bins at or beyond i0 whose ratio is
    at most the ratio at zero (with a relative tie tolerance, so the
    identical-samples case counts its own bins as ties).  Small values
    flag strong evidence against zero distance; values near one say the
    ratio at zero is as large as it gets.
    """
    rb0 = result.rb_at_zero
    cutoff = rb0 * (1.0 + _RB_TIE_REL) + 1e-15
    mask = np.zeros(result.m_bins, dtype=bool)
    mask[result.i0:] = result.per_bin_rb[result.i0:] <= cutoff
    return float(result.posterior_contents[mask].sum())


def verdict(result: RbResult) -> Verdict:
    if result.rb_at_zero > 1.0:
        return Verdict.EVIDENCE_FOR
    if result.rb_at_zero < 1.0:
        return Verdict.EVIDENCE_AGAINST
    return Verdict.NO_EVIDENCE
