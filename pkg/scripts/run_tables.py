#!/usr/bin/env python3
"""Desk-scale reproduction of the simulation study tables.

Four batteries, each printed as a small text table and optionally
collected into one JSON document:

  por         rejection rate per catalog distribution
  verdicts    single seeded run per distribution (ratio, strength)
  conc        mean posterior distance as the concentration a grows
  base-law    mean prior distance under different base laws H

Defaults are desk scale (N=500, r=400, 200 repetitions); --quick drops
them further for a smoke pass.  The full study scale (N=r=1000,
reps=1000) is reachable through the flags but slow on one core.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, replace

import numpy as np

from rbmvn.alternatives import generate
from rbmvn.energy import make_pooled_expectations, make_std_mvn_expectations
from rbmvn.mvn_test import (PriorBase, TestConfig, fit_null,
                            posterior_distance_draw, prior_distance_draw,
                            run_test)
from rbmvn.power import power_study
from rbmvn.rng import RngStream, mix_seed
from rbmvn.samplers import sample_mvn

POR_DISTS = ("n2-i", "exp-exp", "ln2-b2", "nmix1")
VERDICT_DISTS = ("n2-i", "n2-a2", "t5-i2", "exp-exp", "beta-beta",
                 "nmix1", "nmix2", "pvii-10")


def std_normal_prior_base(dim: int) -> PriorBase:
    """H = standard normal: margins N(0,1), independent joint."""
    margins = tuple((lambda size, rng: rng.standard_normal(size))
                    for _ in range(dim))
    return PriorBase(
        margin_samplers=margins,
        joint_sampler=lambda size, rng: rng.standard_normal((size, dim)),
        mean=np.zeros(dim), cov=np.eye(dim))


def nmix2_prior_base() -> PriorBase:
    """H = the correlation-mixture law; its margins are exactly N(0,1)."""
    from rbmvn.alternatives import A2

    margins = tuple((lambda size, rng: rng.standard_normal(size))
                    for _ in range(2))
    return PriorBase(
        margin_samplers=margins,
        joint_sampler=lambda size, rng: generate("nmix2", size, rng),
        mean=np.zeros(2), cov=0.9 * A2 + 0.1 * np.eye(2))


def table_por(config: TestConfig, n: int, reps: int) -> dict:
    rows = {}
    for name in POR_DISTS:
        t0 = time.perf_counter()
        res = power_study(name, n, reps, config)
        rows[name] = {"por": res.proportion_reject,
                      "mean_rb": res.mean_rb_at_zero,
                      "seconds": round(time.perf_counter() - t0, 1)}
        print(f"  {name:12s} POR {res.proportion_reject:6.3f}   "
              f"mean ratio {res.mean_rb_at_zero:7.3f}   "
              f"[{rows[name]['seconds']}s]")
    return rows


def table_verdicts(config: TestConfig, n: int) -> dict:
    rows = {}
    for k, name in enumerate(VERDICT_DISTS):
        rng = RngStream(mix_seed(config.seed, k),
                        2 * config.replications + 1).generator()
        data = generate(name, n, rng)
        report = run_test(data, config)
        rows[name] = {"rb": report.rb_at_zero, "strength": report.strength,
                      "verdict": report.verdict}
        print(f"  {name:12s} ratio {report.rb_at_zero:7.3f}   "
              f"strength {report.strength:5.3f}   {report.verdict}")
    return rows


def table_concentration(config: TestConfig, n: int) -> dict:
    """Posterior distance tightens toward the fitted normal as a grows."""
    rng = RngStream(config.seed, 2 * config.replications + 1).generator()
    data = generate("n2-a2", n, rng)
    null = fit_null(data)
    rows = {}
    for a in (1.0, 5.0, 10.0):
        cfg = replace(config, a=a)
        pool_rng = RngStream(cfg.seed, 2 * cfg.replications).generator()
        exp = make_std_mvn_expectations(null.dim, "pool", cfg.pool_size,
                                        rng=pool_rng)
        draws = [posterior_distance_draw(
                     data, null, cfg,
                     RngStream(cfg.seed, cfg.replications + j).generator(),
                     exp)
                 for j in range(cfg.replications)]
        rows[f"a={a:g}"] = {"mean_posterior_distance": float(np.mean(draws))}
        print(f"  a = {a:4g}   mean posterior distance "
              f"{np.mean(draws):.5f}")
    return rows


def table_base_law(config: TestConfig, n: int) -> dict:
    """Prior distance is (near) invariant to the base law H."""
    rng = RngStream(config.seed, 2 * config.replications + 1).generator()
    data = generate("exp-exp", n, rng)
    null = fit_null(data)
    pool_rng = RngStream(config.seed, 2 * config.replications).generator()

    cases = {}
    cases["fitted-normal"] = (None, null, make_std_mvn_expectations(
        null.dim, "pool", config.pool_size, rng=pool_rng))

    class _Raw:
        mean = np.zeros(2)
        chol = np.eye(2)

    std = std_normal_prior_base(2)
    cases["std-normal"] = (std, _Raw(), make_pooled_expectations(
        pool_rng.standard_normal((config.pool_size, 2))))

    mix = nmix2_prior_base()
    cases["corr-mixture"] = (mix, _Raw(), make_pooled_expectations(
        generate("nmix2", config.pool_size, pool_rng)))

    rows = {}
    for label, (base, reference, exp) in cases.items():
        draws = [prior_distance_draw(
                     null, config, RngStream(config.seed, j).generator(),
                     exp, base=base, reference=reference)
                 for j in range(config.replications)]
        rows[label] = {"mean_prior_distance": float(np.mean(draws))}
        print(f"  H = {label:14s} mean prior distance {np.mean(draws):.5f}")
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=50)
    parser.add_argument("--reps", type=int, default=200,
                        help="repetitions for the rejection-rate table")
    parser.add_argument("--N", dest="n_atoms", type=int, default=500)
    parser.add_argument("--r", dest="replications", type=int, default=400)
    parser.add_argument("--pool", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--quick", action="store_true",
                        help="smoke scale: tiny N/r/reps")
    parser.add_argument("--only", choices=("por", "verdicts", "conc",
                                           "base-law"),
                        help="run a single battery")
    parser.add_argument("--json", dest="json_path",
                        help="also write all rows to this JSON file")
    args = parser.parse_args(argv)

    if args.quick:
        args.n_atoms, args.replications, args.reps = 150, 60, 5
        args.pool = 500

    config = TestConfig(n_atoms=args.n_atoms, replications=args.replications,
                        pool_size=args.pool, seed=args.seed,
                        threads=args.threads)
    out = {"n": args.n, "config": asdict(config)}

    batteries = [
        ("por", "Rejection rates", lambda: table_por(config, args.n, args.reps)),
        ("verdicts", "Single-run verdicts", lambda: table_verdicts(config, args.n)),
        ("conc", "Posterior distance vs concentration",
         lambda: table_concentration(config, max(args.n, 200))),
        ("base-law", "Prior distance vs base law",
         lambda: table_base_law(config, args.n)),
    ]
    for key, title, fn in batteries:
        if args.only and args.only != key:
            continue
        print(f"{title}:")
        out[key] = fn()
        print()

    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(out, fh, indent=2, sort_keys=True)
        print(f"wrote {args.json_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
