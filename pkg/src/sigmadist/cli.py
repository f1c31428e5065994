"""Command-line front end.

    sigmadist chartab 2 3
    sigmadist gow 3 2 --out reports/gow.csv
    sigmadist verdict spec.json
    sigmadist selftest --quick

Exit status: 0 ok, 1 an invariant was violated, 2 bad input.
Reports are built in memory and appended in one write, headed by a run manifest;
nothing time-dependent goes into them, so identical runs give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, chartab, checks, localtower, verdict
from .config import Budgets, BudgetError, RunConfig
from .ffield import FieldError
from .glgroup import SubgroupSpec, expected_order

EXIT_OK, EXIT_VIOLATION, EXIT_BAD_INPUT = 0, 1, 2


class InvariantViolation(RuntimeError):
    """A computed report contradicts an invariant it is expected to satisfy."""


# -- worker pool -------------------------------------------------------------------------------


def parallel_map(threads: int):
    """An order-preserving map; a process pool when more than one worker is asked for."""
    if threads <= 1:
        return lambda fn, items: list(map(fn, items))

    def pmap(fn, items):
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))

    return pmap


# -- reports -----------------------------------------------------------------------------------


def manifest(cfg: RunConfig) -> str:
    b = cfg.budgets
    lines = [
        "# sigmadist report",
        f"# command: {cfg.command}",
        f"# inputs: {' '.join(cfg.inputs)}",
        f"# budgets: group={b.max_group_order} subgroup={b.max_subgroup_order} threads={b.threads}",
        f"# seed: {cfg.seed}",
        f"# ell: {cfg.ell}",
        f"# versions: sigmadist={__version__} numpy={np.__version__} "
        f"python={platform.python_version()}",
    ]
    return "\n".join(lines) + "\n"


def emit(cfg: RunConfig, body: str) -> None:
    text = manifest(cfg) + body
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "a", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- budgets -----------------------------------------------------------------------------------


def _check_group(n: int, q: int, b: Budgets) -> None:
    chartab.check_budget(n, q, b)


def _check_subgroup(spec: SubgroupSpec, n: int, q: int, b: Budgets) -> None:
    order = expected_order(spec, n, q)
    if order > b.max_subgroup_order:
        raise BudgetError(f"{spec.kind} of order {order} exceeds the subgroup budget")


def _table(n: int, q: int, b: Budgets) -> chartab.CharTable:
    _check_group(n, q, b)
    return chartab.character_table(n, q)


# -- subcommands -------------------------------------------------------------------------------


def cmd_chartab(args, cfg: RunConfig) -> int:
    table = _table(args.n, args.q, cfg.budgets)
    emit(cfg, chartab.table_csv(table))
    return EXIT_OK


def cmd_gow(args, cfg: RunConfig) -> int:
    n, q0 = args.n, args.q0
    _check_group(n, q0 * q0, cfg.budgets)
    _check_subgroup(SubgroupSpec("RationalForm", (q0,)), n, q0 * q0, cfg.budgets)
    rows = chartab.gow_survey(n, q0)
    emit(cfg, _csv(["orbit_rep", "sigma_selfdual", "dim_hom"],
                   [[r.orbit_rep, int(r.sigma_selfdual), r.dim_hom] for r in rows]))
    bad = [r.orbit_rep for r in rows if r.dim_hom != int(r.sigma_selfdual)]
    if bad:
        raise InvariantViolation(f"sigma-selfduality and distinction disagree at {bad}")
    return EXIT_OK


def cmd_levi(args, cfg: RunConfig) -> int:
    n, q = args.n, args.q
    _check_group(n, q, cfg.budgets)
    rows = chartab.levi_survey(n, q)
    emit(cfg, _csv(["index", "orbit_rep", "selfdual", "dim_hom"],
                   [[r.index, "" if r.orbit_rep is None else r.orbit_rep,
                     "" if r.selfdual is None else int(r.selfdual), r.dim_hom] for r in rows]))
    bad = [r.index for r in rows if r.orbit_rep is not None and r.dim_hom != int(r.selfdual)]
    if bad:
        raise InvariantViolation(f"selfduality and Levi distinction disagree at {bad}")
    return EXIT_OK


def cmd_mirabolic(args, cfg: RunConfig) -> int:
    n, q = args.n, args.q
    _check_group(n, q, cfg.budgets)
    rows = []
    for r in range(n, -1, -1):
        s = n - r
        if r < s:
            continue
        rows.append([r, s, chartab.mirabolic_hom_dims(n, q, r, s)])
    emit(cfg, _csv(["r", "s", "dim_hom"], rows))
    bad = [(r, s) for r, s, d in rows if d != (1 if r == s else 0)]
    if bad:
        raise InvariantViolation(f"mirabolic dimensions off at {bad}")
    return EXIT_OK


def _load(args, cfg: RunConfig):
    s, x, ell = localtower.load_spec(args.spec)
    if args.ell is not None:
        ell = args.ell
    return s, x, ell


def cmd_verdict(args, cfg: RunConfig) -> int:
    s, x, ell = _load(args, cfg)
    v = verdict.decide(s, x, ell)
    emit(cfg, json.dumps(v.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_twist_scan(args, cfg: RunConfig) -> int:
    s, x, ell = _load(args, cfg)
    rep = verdict.omega_twist_exists(s, x, ell)
    found = verdict.exhaustive_twist_scan(s, x, ell)
    out = {
        "exists": rep.exists,
        "witness": None if rep.witness is None else str(rep.witness.value),
        "reason": rep.reason,
        "exhaustive_witness": None if found is None else str(found.value),
    }
    emit(cfg, json.dumps(out, indent=2, sort_keys=True))
    if rep.exists != (found is not None):
        raise InvariantViolation("twist existence disagrees with the exhaustive scan")
    return EXIT_OK


def _run_index(job: tuple[int, bool, int]) -> checks.CheckResult:
    i, quick, seed = job
    module, name, thunk = checks.registry(quick, seed)[i]
    return checks.run_check(module, name, thunk)


def cmd_selftest(args, cfg: RunConfig) -> int:
    reg = checks.registry(args.quick, cfg.seed)
    jobs = [(i, args.quick, cfg.seed) for i, (m, _n, _t) in enumerate(reg)
            if not args.only or m == args.only]
    results = parallel_map(cfg.budgets.threads)(_run_index, jobs)
    # timings vary run to run, so they go to stderr, not the report
    for r in results:
        print(r.line(), file=sys.stderr)
    lines = [f"{'PASS' if r.ok else 'FAIL'} {r.module}.{r.name}" for r in results]
    failed = [r for r in results if not r.ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    emit(cfg, "\n".join(lines))
    return EXIT_VIOLATION if failed else EXIT_OK


# -- entry point -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    d = Budgets()
    common.add_argument("--out", help="append the report to this file instead of stdout")
    common.add_argument("--budget-group", type=int, default=d.max_group_order)
    common.add_argument("--budget-subgroup", type=int, default=d.max_subgroup_order)
    common.add_argument("--threads", type=int, default=d.threads)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--ell", type=int, default=None,
                        help="coefficient characteristic (0 for characteristic zero)")

    p = argparse.ArgumentParser(prog="sigmadist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chartab", parents=[common], help="character table of GL_n(F_q) as CSV")
    s.add_argument("n", type=int)
    s.add_argument("q", type=int)
    s.set_defaults(fn=cmd_chartab)

    s = sub.add_parser("gow", parents=[common], help="supercuspidals of GL_n(F_{q0^2}) vs GL_n(F_q0)")
    s.add_argument("n", type=int)
    s.add_argument("q0", type=int)
    s.set_defaults(fn=cmd_gow)

    s = sub.add_parser("levi", parents=[common], help="distinction by GL_r x GL_r, n = 2r")
    s.add_argument("n", type=int)
    s.add_argument("q", type=int)
    s.set_defaults(fn=cmd_levi)

    s = sub.add_parser("mirabolic", parents=[common], help="Hom_{P cap H_{r,s}}(Gamma, 1)")
    s.add_argument("n", type=int)
    s.add_argument("q", type=int)
    s.set_defaults(fn=cmd_mirabolic)

    s = sub.add_parser("verdict", parents=[common], help="decide a tower spec (JSON)")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_verdict)

    s = sub.add_parser("twist-scan", parents=[common], help="omega-distinguished unramified twists")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_twist_scan)

    s = sub.add_parser("selftest", parents=[common], help="run every invariant check")
    s.add_argument("--quick", action="store_true", help="trim the largest enumerations")
    s.add_argument("--only", help="restrict to one module")
    s.set_defaults(fn=cmd_selftest)
    return p


def config_from_args(args) -> RunConfig:
    budgets = Budgets(max_group_order=args.budget_group, max_subgroup_order=args.budget_subgroup,
                      threads=args.threads)
    inputs = tuple(str(getattr(args, k)) for k in ("n", "q", "q0", "spec") if hasattr(args, k))
    if getattr(args, "quick", False):
        inputs += ("--quick",)
    if getattr(args, "only", None):
        inputs += (f"--only={args.only}",)
    return RunConfig(args.command, inputs, args.out, budgets, args.seed, args.ell or 0)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage already
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        return args.fn(args, cfg)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except chartab.ConsistencyError as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (localtower.SpecError, BudgetError, FieldError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
