"""Rank correlation against brute force, PD repair, copula sampling."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rbmvn.copula import (CopulaModel, estimate_correlation, gauss_rank_corr,
                          kendall_tau, nearest_pd, rho_to_normal_corr,
                          sample_copula, spearman_rho, tau_to_normal_corr)
from rbmvn.errors import UndefinedCorrelationError
from rbmvn.linalg import cholesky
from rbmvn.rng import RngStream
from rbmvn.special import std_normal_cdf


def _tau_brute(x, y):
    n = len(x)
    num = n0 = n1 = n2 = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = np.sign(x[i] - x[j])
            dy = np.sign(y[i] - y[j])
            num += dx * dy
            n0 += 1
            if dx == 0:
                n1 += 1
            if dy == 0:
                n2 += 1
    return num / math.sqrt(float(n0 - n1)) / math.sqrt(float(n0 - n2))


def _rank_avg(v):
    order = np.argsort(v, kind="stable")
    ranks = np.empty(len(v))
    sv = v[order]
    i = 0
    while i < len(v):
        j = i
        while j + 1 < len(v) and sv[j + 1] == sv[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def test_kendall_matches_brute_force():
    rng = np.random.default_rng(7)
    for k in range(200):
        n = int(rng.integers(2, 61))
        x = rng.standard_normal(n)
        y = 0.4 * x + rng.standard_normal(n)
        if k % 3 == 0:  # inject heavy ties
            x = np.round(x)
            y = np.round(y)
        if np.all(x == x[0]) or np.all(y == y[0]):
            continue
        assert kendall_tau(x, y) == pytest.approx(_tau_brute(x, y), abs=1e-12)


def test_kendall_exact_small_cases():
    assert kendall_tau(np.array([1.0, 2, 3]), np.array([1.0, 2, 3])) == 1.0
    assert kendall_tau(np.array([1.0, 2, 3]), np.array([3.0, 2, 1])) == -1.0


def test_kendall_undefined_on_constant_column():
    with pytest.raises(UndefinedCorrelationError):
        kendall_tau(np.ones(5), np.arange(5.0))


def test_spearman_matches_rank_pearson():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(3, 50))
        x = np.round(rng.standard_normal(n), 1)
        y = np.round(rng.standard_normal(n) + 0.5 * x, 1)
        if np.all(x == x[0]) or np.all(y == y[0]):
            continue
        rx, ry = _rank_avg(x), _rank_avg(y)
        want = np.corrcoef(rx, ry)[0, 1]
        assert spearman_rho(x, y) == pytest.approx(want, abs=1e-10)


def test_conversion_formulas():
    assert tau_to_normal_corr(0.5) == pytest.approx(math.sin(math.pi * 0.25))
    assert tau_to_normal_corr(0.0) == 0.0
    assert rho_to_normal_corr(0.5) == pytest.approx(2 * math.sin(math.pi / 12))
    # vectorized
    taus = np.array([-1.0, 0.0, 1.0])
    np.testing.assert_allclose(tau_to_normal_corr(taus), [-1.0, 0.0, 1.0], atol=1e-15)


def test_gauss_rank_invariant_to_monotone_transform():
    rng = np.random.default_rng(9)
    x = rng.standard_normal(500)
    y = 0.6 * x + 0.8 * rng.standard_normal(500)
    base = gauss_rank_corr(x, y)
    assert gauss_rank_corr(np.exp(x), y ** 3) == pytest.approx(base, abs=1e-12)
    # and close to the generating coefficient
    assert abs(base - 0.6) < 0.12


def test_nearest_pd_leaves_pd_untouched():
    good = np.array([[1.0, 0.3], [0.3, 1.0]])
    np.testing.assert_array_equal(nearest_pd(good), good)


def test_nearest_pd_repairs_indefinite():
    bad = np.array([[1.0, 0.95, -0.9],
                    [0.95, 1.0, 0.3],
                    [-0.9, 0.3, 1.0]])
    assert np.linalg.eigvalsh(bad).min() < 0
    fixed = nearest_pd(bad)
    np.testing.assert_allclose(np.diag(fixed), 1.0, atol=1e-12)
    np.testing.assert_allclose(fixed, fixed.T)
    assert np.linalg.eigvalsh(fixed).min() >= 1e-7
    cholesky(fixed)  # must factor cleanly


def test_estimate_correlation_methods_agree_on_gaussian():
    rng = RngStream(10, 0).generator()
    r_true = 0.55
    chol = cholesky(np.array([[1.0, r_true], [r_true, 1.0]]))
    z = rng.standard_normal((4000, 2)) @ chol.T
    for method in ("kendall", "spearman", "gauss-rank"):
        est = estimate_correlation(z, method)
        np.testing.assert_allclose(np.diag(est), 1.0)
        assert abs(est[0, 1] - r_true) < 0.05


def test_copula_marginal_uniformity_ks():
    # push samples through the model margins' own cdf: must be uniform
    rng = RngStream(10, 1).generator()

    class _NormalMargin:
        def quantile(self, u):
            from rbmvn.special import std_normal_quantile
            return np.array([std_normal_quantile(v) for v in np.atleast_1d(u)])

    corr = np.array([[1.0, -0.4], [-0.4, 1.0]])
    model = CopulaModel(margins=(_NormalMargin(), _NormalMargin()), correlation=corr)
    n = 2000
    draws = sample_copula(model, n, rng)
    for j in range(2):
        u = np.sort([std_normal_cdf(v) for v in draws[:, j]])
        ks = np.max(np.abs(u - (np.arange(1, n + 1) - 0.5) / n))
        assert ks < 1.63 / math.sqrt(n)  # alpha = 0.01 critical value


def test_copula_preserves_dependence_sign():
    rng = RngStream(10, 2).generator()
    corr = np.array([[1.0, 0.7], [0.7, 1.0]])

    class _UniformMargin:
        def quantile(self, u):
            return u

    model = CopulaModel(margins=(_UniformMargin(), _UniformMargin()), correlation=corr)
    draws = sample_copula(model, 3000, rng)
    assert np.all(draws >= 0.0) and np.all(draws <= 1.0)
    assert np.corrcoef(draws.T)[0, 1] > 0.5


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=40), st.integers(min_value=0, max_value=10**6))
def test_kendall_range(n, seed):
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 5, n).astype(float)
    y = rng.integers(0, 5, n).astype(float)
    if np.all(x == x[0]) or np.all(y == y[0]):
        return
    t = kendall_tau(x, y)
    assert -1.0 <= t <= 1.0
