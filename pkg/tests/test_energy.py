"""Energy distance kernels: closed forms, pooled estimators, invariances."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rbmvn.energy import (StdMvnExpectations, energy_statistic,
                          expected_abs_distance_to_std_normal,
                          expected_norm_between_std_mvn,
                          make_pooled_expectations, make_std_mvn_expectations,
                          weighted_energy_statistic, _expected_norm_series)
from rbmvn.errors import InvalidWeightsError
from rbmvn.rng import RngStream

# Gauss-Legendre quadrature oracle for E||delta e1 - Z||, Z ~ N(0, I_2)
_NONCENTRAL_2D = [
    (0.0, 1.253314137315437),
    (0.5, 1.3304473405606276),
    (1.0, 1.5485724604336921),
    (2.0, 2.272383428112524),
    (5.0, 5.101069639491753),
    (12.0, 12.041739775085711),
    (40.0, 40.0125019549554),
]


class _Isotropic:
    """Zero-mean identity-factor reference: statistic in raw coordinates."""

    def __init__(self, dim):
        self.mean = np.zeros(dim)
        self.chol = np.eye(dim)


def test_between_norm_closed_form():
    assert expected_norm_between_std_mvn(1) == pytest.approx(2.0 / math.sqrt(math.pi))
    assert expected_norm_between_std_mvn(2) == pytest.approx(math.sqrt(math.pi))
    for m in (1, 2, 3, 5, 11):
        want = 2.0 * math.exp(math.lgamma((m + 1) / 2) - math.lgamma(m / 2))
        assert expected_norm_between_std_mvn(m) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_between_norm_against_monte_carlo(m):
    rng = RngStream(11, m).generator()
    pairs = 200_000
    d = np.linalg.norm(rng.standard_normal((pairs, m))
                       - rng.standard_normal((pairs, m)), axis=1)
    se = d.std(ddof=1) / math.sqrt(pairs)
    assert abs(d.mean() - expected_norm_between_std_mvn(m)) < 4 * se


def test_series_matches_quadrature_oracle():
    for delta, want in _NONCENTRAL_2D:
        got = float(_expected_norm_series(np.array([delta * delta]), 2)[0])
        assert got == pytest.approx(want, abs=5e-8)


def test_one_dim_closed_form():
    for a in (0.0, 0.5, 1.0, 3.0, 30.0):
        phi = math.exp(-0.5 * a * a) / math.sqrt(2 * math.pi)
        cap = 0.5 * math.erfc(-a / math.sqrt(2.0))
        want = 2 * phi + a * (2 * cap - 1.0)
        assert expected_abs_distance_to_std_normal(a) == pytest.approx(want, rel=1e-12)
        got = float(_expected_norm_series(np.array([a * a]), 1)[0])
        assert got == pytest.approx(want, rel=1e-9)


def test_series_expectations_object():
    exp = make_std_mvn_expectations(2, "series")
    z = np.array([[0.0, 0.0], [3.0, 4.0]])
    vals = exp.expected_norm(z)
    assert vals[0] == pytest.approx(1.253314137315437, abs=1e-8)
    assert vals[1] == pytest.approx(
        float(_expected_norm_series(np.array([25.0]), 2)[0]), rel=1e-12)


def test_pool_expectations_consistent_with_series():
    rng = RngStream(11, 40).generator()
    exp_pool = make_std_mvn_expectations(2, "pool", pool_size=60_000, rng=rng)
    exp_series = make_std_mvn_expectations(2, "series")
    z = np.array([[0.0, 0.0], [1.0, -1.0], [2.5, 0.5]])
    got = exp_pool.expected_norm(z)
    want = exp_series.expected_norm(z)
    np.testing.assert_allclose(got, want, atol=0.02)
    assert exp_pool.between == pytest.approx(exp_series.between, abs=0.02)


def test_pooled_statistic_is_nonnegative():
    # pool between-term and cross-term share the pool, so the statistic is
    # an exact squared metric to the pool's empirical law
    rng = RngStream(11, 41).generator()
    exp = make_std_mvn_expectations(2, "pool", pool_size=500, rng=rng)
    ref = _Isotropic(2)
    for _ in range(20):
        sample = rng.standard_normal((100, 2))
        assert energy_statistic(sample, ref, exp) >= -1e-12


def test_statistic_zero_against_own_pool():
    rng = RngStream(11, 42).generator()
    pool = rng.standard_normal((300, 2))
    exp = make_pooled_expectations(pool)
    ref = _Isotropic(2)
    assert energy_statistic(pool, ref, exp) == pytest.approx(0.0, abs=1e-12)


def test_rotation_invariance():
    rng = RngStream(11, 43).generator()
    sample = rng.standard_normal((64, 3)) * 1.3 + 0.2
    theta = 0.7
    rot = np.array([[math.cos(theta), -math.sin(theta), 0.0],
                    [math.sin(theta), math.cos(theta), 0.0],
                    [0.0, 0.0, 1.0]])
    exp = make_std_mvn_expectations(3, "series")
    ref = _Isotropic(3)
    base = energy_statistic(sample, ref, exp)
    rotated = energy_statistic(sample @ rot.T, ref, exp)
    assert rotated == pytest.approx(base, abs=1e-10)


def test_weighted_uniform_matches_unweighted():
    rng = RngStream(11, 44).generator()
    sample = rng.standard_normal((50, 2))
    exp = make_std_mvn_expectations(2, "series")
    ref = _Isotropic(2)
    w = np.full(50, 1.0 / 50)
    assert weighted_energy_statistic(sample, w, ref, exp) == pytest.approx(
        energy_statistic(sample, ref, exp), rel=1e-12)


def test_weight_validation():
    rng = RngStream(11, 45).generator()
    sample = rng.standard_normal((10, 2))
    exp = make_std_mvn_expectations(2, "series")
    ref = _Isotropic(2)
    with pytest.raises(InvalidWeightsError):
        weighted_energy_statistic(sample, np.full(9, 1.0 / 9), ref, exp)
    bad = np.full(10, 0.1)
    bad[0] = -0.1
    bad[1] = 0.3
    with pytest.raises(InvalidWeightsError):
        weighted_energy_statistic(sample, bad, ref, exp)
    with pytest.raises(InvalidWeightsError):
        weighted_energy_statistic(sample, np.full(10, 0.2), ref, exp)


def test_dirichlet_weight_mean_matches_closed_form():
    # fixed atoms: averaging the weighted statistic over Dirichlet(c,...,c)
    # weights has a closed form in the first two weight moments
    rng = RngStream(11, 46).generator()
    n_atoms, a = 50, 1.0
    atoms = rng.standard_normal((n_atoms, 2))
    exp = make_std_mvn_expectations(2, "series")
    ref = _Isotropic(2)
    c = a / n_atoms
    e_i = exp.expected_norm(atoms)
    gram = atoms @ atoms.T
    sq = np.diag(gram)
    dist = np.sqrt(np.maximum(sq[:, None] + sq[None, :] - 2 * gram, 0.0))
    e_jijj = c / (n_atoms * (n_atoms * c + 1.0))
    closed = 2.0 * e_i.mean() - e_jijj * dist.sum() - exp.between
    reps = 4000
    draws = np.empty(reps)
    for k in range(reps):
        w = rng.dirichlet(np.full(n_atoms, c))  # independent weight oracle
        draws[k] = weighted_energy_statistic(atoms, w, ref, exp)
    se = draws.std(ddof=1) / math.sqrt(reps)
    assert abs(draws.mean() - closed) < 4 * se


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=3),
       st.integers(min_value=0, max_value=10**6))
def test_statistic_finite_and_bounded_below(n, m, seed):
    rng = np.random.default_rng(seed)
    sample = rng.standard_normal((n, m)) * 2.0
    exp = make_std_mvn_expectations(m, "series")
    ref = _Isotropic(m)
    val = energy_statistic(sample, ref, exp)
    assert math.isfinite(val)
    # series between-term makes this a squared metric up to quadrature error
    assert val > -1e-9
