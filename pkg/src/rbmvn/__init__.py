"""Relative belief assessment of multivariate normality.

A Bayesian check of whether data are multivariate normal: the model is
a Dirichlet-process-marginal Gaussian copula centered at the fitted
normal, the discrepancy is the energy distance to that normal, and the
evidence is the relative belief ratio of "distance equals zero" with an
attached strength calibration.

Typical use:

    from rbmvn import run_test
    report = run_test(data)            # data: (n, m) array
    report.rb_at_zero, report.strength, report.verdict
"""

from .alternatives import generate, get_alternative, list_alternatives
from .copula import (CopulaModel, estimate_correlation, kendall_tau,
                     nearest_pd, sample_copula)
from .dataio import load_csv, loads_csv, save_csv
from .dirichlet import (DPApprox, PosteriorBase, dp_approx, draw_weights,
                        posterior_dp, sample_posterior_base)
from .energy import (StdMvnExpectations, energy_statistic,
                     expected_norm_between_std_mvn, expected_norm_to_std_mvn,
                     make_pooled_expectations, make_std_mvn_expectations,
                     weighted_energy_statistic)
from .errors import (CsvFormatError, DomainError, InsufficientDataError,
                     InvalidConfigError, InvalidWeightsError,
                     NotPositiveDefiniteError, UndefinedCorrelationError)
from .mvn_test import (NullModel, PriorBase, TestConfig, TestReport,
                       default_prior_base, fit_null, posterior_distance_draw,
                       prior_distance_draw, run_test)
from .power import PowerResult, power_study
from .rbr import (DistanceSamples, RbResult, Verdict, clamp_distances,
                  estimate_rb, estimate_strength, verdict)
from .rng import RngStream, mix_seed

__version__ = "0.1.0"

__all__ = [
    "CopulaModel", "CsvFormatError", "DPApprox", "DistanceSamples",
    "DomainError", "InsufficientDataError", "InvalidConfigError",
    "InvalidWeightsError", "NotPositiveDefiniteError", "NullModel",
    "PosteriorBase", "PowerResult", "PriorBase", "RbResult", "RngStream",
    "StdMvnExpectations", "TestConfig", "TestReport",
    "UndefinedCorrelationError", "Verdict", "clamp_distances",
    "default_prior_base", "dp_approx", "draw_weights", "energy_statistic",
    "estimate_correlation", "estimate_rb", "estimate_strength",
    "expected_norm_between_std_mvn", "expected_norm_to_std_mvn", "fit_null",
    "generate",
    "get_alternative", "kendall_tau", "list_alternatives", "load_csv",
    "loads_csv", "make_pooled_expectations", "make_std_mvn_expectations",
    "mix_seed", "nearest_pd", "posterior_distance_draw", "posterior_dp",
    "power_study", "prior_distance_draw", "run_test", "sample_copula",
    "sample_posterior_base", "save_csv", "verdict",
    "weighted_energy_statistic",
]
