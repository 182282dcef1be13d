import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rbmvn.errors import NotPositiveDefiniteError
from rbmvn.linalg import cholesky, cov_to_corr, solve_lower


def test_cholesky_matches_numpy():
    rng = np.random.default_rng(0)
    for _ in range(25):
        m = rng.integers(1, 7)
        a = rng.standard_normal((m, m + 2))
        spd = a @ a.T + 0.1 * np.eye(m)
        np.testing.assert_allclose(cholesky(spd), np.linalg.cholesky(spd),
                                   rtol=1e-10, atol=1e-12)


def test_cholesky_reports_pivot():
    bad = np.array([[1.0, 0.0, 0.0],
                    [0.0, 2.0, 3.0],
                    [0.0, 3.0, 1.0]])  # trailing 2x2 block indefinite
    with pytest.raises(NotPositiveDefiniteError) as err:
        cholesky(bad)
    assert err.value.pivot == 2


def test_cholesky_rejects_rank_deficient():
    ones = np.ones((3, 3))
    with pytest.raises(NotPositiveDefiniteError):
        cholesky(ones)


def test_solve_lower_matches_numpy():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((4, 6))
    spd = a @ a.T + 0.5 * np.eye(4)
    low = cholesky(spd)
    rows = rng.standard_normal((10, 4))
    want = np.linalg.solve(low, rows.T).T
    np.testing.assert_allclose(solve_lower(low, rows), want, rtol=1e-10, atol=1e-12)


def test_cov_to_corr():
    cov = np.array([[4.0, 2.0], [2.0, 9.0]])
    corr = cov_to_corr(cov)
    np.testing.assert_allclose(np.diag(corr), 1.0)
    assert corr[0, 1] == pytest.approx(2.0 / 6.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=10**6))
def test_cholesky_reconstructs(m, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((m, m + 3))
    spd = a @ a.T + 0.2 * np.eye(m)
    low = cholesky(spd)
    assert np.allclose(np.triu(low, 1), 0.0)
    np.testing.assert_allclose(low @ low.T, spd, rtol=1e-9, atol=1e-9)
