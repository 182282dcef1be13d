"""Command line interface.

Subcommands:
  test      assess a CSV dataset
  simulate  draw from a catalog distribution, then assess it
  power     replicate simulate-and-assess, report the rejection rate
  tables    run a small default battery across catalog distributions

Exit codes: 0 success, 2 usage or configuration problems, 3 data
problems (unreadable CSV, too few rows, degenerate covariance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .alternatives import generate, list_alternatives
from .dataio import load_csv
from .errors import (CsvFormatError, DomainError, InsufficientDataError,
                     InvalidConfigError, NotPositiveDefiniteError)
from .mvn_test import TestConfig, TestReport, run_test
from .power import PowerResult, power_study
from .rng import RngStream

_USAGE_EXIT = 2
_DATA_EXIT = 3

_DEFAULT = TestConfig()


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, default=_DEFAULT.a,
                   help="prior concentration (default %(default)s)")
    p.add_argument("--N", dest="n_atoms", type=int, default=_DEFAULT.n_atoms,
                   help="atoms per model draw (default %(default)s)")
    p.add_argument("--r", dest="replications", type=int,
                   default=_DEFAULT.replications,
                   help="Monte Carlo replications per side (default %(default)s)")
    p.add_argument("--M", dest="m_bins", type=int, default=_DEFAULT.m_bins,
                   help="relative belief bins (default %(default)s)")
    p.add_argument("--corr", choices=("kendall", "spearman", "gauss-rank"),
                   default=_DEFAULT.corr_method,
                   help="copula correlation estimator (default %(default)s)")
    p.add_argument("--scheme", choices=("dirichlet", "series-quantile"),
                   default=_DEFAULT.weight_scheme,
                   help="weight construction (default %(default)s)")
    p.add_argument("--pool", dest="pool_size", type=int,
                   default=_DEFAULT.pool_size,
                   help="expectation pool size (default %(default)s)")
    p.add_argument("--seed", type=int, default=_DEFAULT.seed,
                   help="master seed (default %(default)s)")
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("RBMVN_THREADS",
                                              _DEFAULT.threads)),
                   help="worker processes (default %(default)s, or "
                        "RBMVN_THREADS)")
    p.add_argument("--format", choices=("json", "text"), default="json",
                   help="output format (default %(default)s)")


def _config_from_args(args: argparse.Namespace) -> TestConfig:
    return TestConfig(a=args.a, n_atoms=args.n_atoms,
                      replications=args.replications, m_bins=args.m_bins,
                      corr_method=args.corr, weight_scheme=args.scheme,
                      pool_size=args.pool_size, seed=args.seed,
                      threads=args.threads)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbmvn",
        description="Relative belief assessment of multivariate normality.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="assess a CSV dataset")
    p_test.add_argument("data", help="path to a CSV file (numeric columns, "
                                     "optional single header row)")
    _add_config_flags(p_test)

    p_sim = sub.add_parser("simulate",
                           help="draw a synthetic dataset and assess it")
    p_sim.add_argument("--dist", required=True,
                       help="catalog name; one of: "
                            + ", ".join(list_alternatives()))
    p_sim.add_argument("--n", type=int, required=True, help="sample size")
    _add_config_flags(p_sim)

    p_pow = sub.add_parser("power", help="replicated rejection-rate study")
    p_pow.add_argument("--dist", required=True,
                       help="catalog name; one of: "
                            + ", ".join(list_alternatives()))
    p_pow.add_argument("--n", type=int, required=True, help="sample size")
    p_pow.add_argument("--reps", type=int, required=True,
                       help="number of replications")
    _add_config_flags(p_pow)

    p_tab = sub.add_parser(
        "tables", help="desk-scale battery over several catalog entries")
    p_tab.add_argument("--n", type=int, default=50, help="sample size "
                                                         "(default %(default)s)")
    p_tab.add_argument("--reps", type=int, default=200,
                       help="replications per distribution (default %(default)s)")
    p_tab.add_argument("--dists", default="n2-i,exp-exp,nmix1",
                       help="comma-separated catalog names "
                            "(default %(default)s)")
    _add_config_flags(p_tab)
    # desk scale: smaller atom clouds and fewer draws per side than the
    # library defaults, trading Monte Carlo error for runtime
    p_tab.set_defaults(n_atoms=500, replications=400)
    return parser


def _report_text(report: TestReport) -> str:
    lines = [
        f"n = {report.n_obs}, dimension = {report.dim}",
        f"relative belief ratio at zero distance: {report.rb_at_zero:.4f}",
        f"strength of the evidence: {report.strength:.4f}",
        f"verdict: {report.verdict.replace('_', ' ')}",
        f"prior distance mean {report.prior_summary['mean']:.5f}, "
        f"posterior distance mean {report.posterior_summary['mean']:.5f}",
    ]
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def _power_text(result: PowerResult) -> str:
    return "\n".join([
        f"distribution {result.distribution}, n = {result.n_obs}, "
        f"{result.repetitions} replications",
        f"proportion with evidence against normality: "
        f"{result.proportion_reject:.3f}",
        f"mean ratio at zero {result.mean_rb_at_zero:.3f}, "
        f"mean strength {result.mean_strength:.3f}",
    ])


def _emit_report(report: TestReport, fmt: str) -> None:
    if fmt == "json":
        print(report.to_json())
    else:
        print(_report_text(report))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command == "test":
            data = load_csv(args.data)
            report = run_test(data, config)
            _emit_report(report, args.format)
        elif args.command == "simulate":
            rng = RngStream(config.seed,
                            2 * config.replications + 1).generator()
            data = generate(args.dist, args.n, rng)
            report = run_test(data, config)
            if args.format == "json":
                payload = report.to_dict()
                payload["source"] = {"distribution": args.dist, "n": args.n}
                print(json.dumps(payload, sort_keys=True))
            else:
                print(f"simulated {args.n} draws from {args.dist}")
                print(_report_text(report))
        elif args.command == "power":
            result = power_study(args.dist, args.n, args.reps, config)
            if args.format == "json":
                print(json.dumps(result.to_dict(), sort_keys=True))
            else:
                print(_power_text(result))
        elif args.command == "tables":
            names = [s.strip() for s in args.dists.split(",") if s.strip()]
            if not names:
                raise InvalidConfigError("no distributions given")
            results = [power_study(name, args.n, args.reps, config)
                       for name in names]
            if args.format == "json":
                print(json.dumps({"n": args.n, "reps": args.reps,
                                  "results": [r.to_dict() for r in results]},
                                 sort_keys=True))
            else:
                for r in results:
                    print(_power_text(r))
                    print()
        return 0
    except (CsvFormatError, InsufficientDataError,
            NotPositiveDefiniteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _DATA_EXIT
    except (InvalidConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
