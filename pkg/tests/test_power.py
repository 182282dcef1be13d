"""Power study bookkeeping."""
import pytest

from rbmvn.errors import InvalidConfigError
from rbmvn.mvn_test import TestConfig
from rbmvn.power import power_study

_FAST = TestConfig(n_atoms=100, replications=50, pool_size=300, seed=9)


def test_power_study_fields():
    res = power_study("exp-exp", 40, 4, config=_FAST)
    assert res.repetitions == 4
    assert res.rejections == sum(v == "evidence_against" for v in res.verdicts)
    assert res.proportion_reject == pytest.approx(res.rejections / 4)
    assert len(res.rb_values) == 4
    assert len(res.strength_values) == 4
    assert res.distribution == "exp-exp"
    d = res.to_dict()
    assert d["n_obs"] == 40
    assert d["config"]["seed"] == 9


def test_power_study_deterministic():
    a = power_study("nmix1", 40, 3, config=_FAST)
    b = power_study("nmix1", 40, 3, config=_FAST)
    assert a.rb_values == b.rb_values
    assert a.verdicts == b.verdicts


def test_replications_use_distinct_data():
    res = power_study("n2-i", 40, 3, config=_FAST)
    assert len(set(res.rb_values)) > 1 or len(set(res.strength_values)) > 1


def test_zero_reps_rejected():
    with pytest.raises(InvalidConfigError):
        power_study("n2-i", 40, 0, config=_FAST)


def test_unknown_distribution_rejected():
    with pytest.raises(InvalidConfigError):
        power_study("nope", 40, 1, config=_FAST)
