#!/usr/bin/env python3
"""Sweep the verdict grid and tabulate outcomes by decision rule."""

import argparse
import collections
import random
import time
from dataclasses import fields

from sigmadist import verdict
from sigmadist.localtower import LevelZeroChar, validate_spec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    d = verdict.GridConfig()
    ap.add_argument("--q0s", type=int, nargs="+", default=list(d.q0s))
    ap.add_argument("--ells", type=int, nargs="+", default=list(d.ells))
    ap.add_argument("--samples", type=int, default=d.theta_samples)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-twists", action="store_true", help="skip the twist-existence checks")
    a = ap.parse_args()
    cfg = verdict.GridConfig(q0s=tuple(a.q0s), ells=tuple(a.ells), theta_samples=a.samples, seed=a.seed)
    print("config:", {f.name: getattr(cfg, f.name) for f in fields(cfg)})

    t0 = time.perf_counter()
    rep = verdict.run_grid(cfg, twist_checks=not a.no_twists)
    print(f"{rep.specs} specs, {rep.data} data, {len(rep.failures)} failures "
          f"({time.perf_counter() - t0:.1f}s)")
    for f in rep.failures[:10]:
        print("  FAIL", f)

    # outcome tally by rule, on a fresh pass with the same sampling
    rng = random.Random(cfg.seed)
    tally = collections.Counter()
    for s in verdict.grid_specs(cfg):
        for th in verdict.sigma_selfdual_thetas(s, cfg.theta_samples, rng):
            for xi in verdict.candidate_xi_t(s):
                x = LevelZeroChar(th, xi)
                for ell in cfg.ells:
                    if ell != s.p and not validate_spec(s, x, ell):
                        v = verdict.decide(s, x, ell)
                        tally[(v.rule, v.outcome)] += 1
    for (rule, outcome), k in sorted(tally.items()):
        print(f"{k:8d}  {outcome:<20} {rule}")


if __name__ == "__main__":
    main()
