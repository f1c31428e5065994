#!/usr/bin/env python3
"""sigma-selfduality against GL_n(F_q0)-distinction for the supercuspidals of
GL_n(F_{q0^2}), over every group that fits the default budgets."""

import argparse
import time

from sigmadist import chartab, mchar
from sigmadist.config import BudgetError


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", nargs="+", default=["1,2", "1,3", "2,2", "2,3", "3,2"],
                    help="n,q0 pairs")
    a = ap.parse_args()
    for case in a.cases:
        n, q0 = map(int, case.split(","))
        try:
            chartab.check_budget(n, q0 * q0)
        except BudgetError as exc:
            print(f"GL_{n}({q0 * q0}): skipped ({exc})")
            continue
        t0 = time.perf_counter()
        rows = chartab.gow_survey(n, q0)
        yes = [r for r in rows if r.sigma_selfdual]
        agree = all(r.dim_hom == int(r.sigma_selfdual) for r in rows)
        print(f"GL_{n}({q0 * q0}) over GL_{n}({q0}): {len(rows)} supercuspidals, "
              f"{len(yes)} sigma-selfdual (formula count "
              f"{mchar.count_sigma_selfdual_supercuspidals(q0, n)}), "
              f"distinction {'agrees' if agree else 'DISAGREES'} "
              f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
