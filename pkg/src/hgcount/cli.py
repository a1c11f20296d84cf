"""``hg`` command line: count, verify, formula.

Exit codes: 0 success, 1 mismatch or internal disagreement, 2 usage error,
3 engine cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from . import catalog
from .errors import CapExceeded, CatalogError, HGError, ParseError
from .formulas import formula_values
from .groups import DEFAULT_AUT_BOUND, DEFAULT_EFFORT_CAP
from .hopf import _default_workers, byott_count, full_report
from .perm import DEFAULT_CLOSURE_CAP
from .verify import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    closure_cap: int = DEFAULT_CLOSURE_CAP
    aut_bound: int = DEFAULT_AUT_BOUND
    effort_cap: int = DEFAULT_EFFORT_CAP
    worker_count: int = 1
    output_format: str = "json"
    timings: bool = False

    def __post_init__(self):
        for name in ("closure_cap", "aut_bound", "effort_cap", "worker_count"):
            if getattr(self, name) < 1:
                raise ParseError(f"{name} must be positive")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_count(args, cfg: RunConfig) -> int:
    try:
        return _count(args, cfg)
    except HGError as exc:
        if exc.spec is None:
            exc.spec = f"G={args.G}" + (f", N={args.N}" if args.N else "")
        raise


def _count(args, cfg: RunConfig) -> int:
    G = catalog.resolve(args.G, cfg.closure_cap)
    if args.N:
        N = catalog.resolve(args.N, cfg.closure_cap)
        if G.order != N.order:
            raise ParseError(f"|G| = {G.order} but |N| = {N.order}", spec=f"{args.G} / {args.N}")
        rep = byott_count(G, N, cfg.aut_bound, cfg.effort_cap, cfg.worker_count, cfg.closure_cap)
        if cfg.output_format == "json":
            _emit(rep.to_json(cfg.timings))
        else:
            print(f"#E({rep.G_label},{rep.N_label}) = |Aut G|/|Aut N| * regular = "
                  f"{rep.aut_G_order}/{rep.aut_N_order} * {rep.regular_in_hol_count} = {rep.e_count}")
        return EXIT_OK
    groups = catalog.groups_of_order(G.order)
    rep = full_report(G, groups, cfg.aut_bound, cfg.effort_cap, cfg.worker_count)
    if cfg.output_format == "json":
        _emit(rep.to_json(cfg.timings))
    else:
        width = max(len(r.N_label) for r in rep.rows)
        print(f"{'N':<{width}}  regular_in_hol  aut_N  e_count")
        for r in rep.rows:
            print(f"{r.N_label:<{width}}  {r.regular_in_hol_count:>14}  {r.aut_N_order:>5}  {r.e_count:>7}")
        print(f"total #E({rep.G_label}) = {rep.total}")
        if rep.oracle_total is not None:
            print(f"direct enumeration in Perm(G): {rep.oracle_total}")
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    checks = run_suite(args.suite)
    ok = all(c.ok for c in checks)
    if cfg.output_format == "json":
        _emit({"suite": args.suite, "checks": [c.to_json() for c in checks], "pass": ok})
    else:
        for c in checks:
            print(c.line())
        print(f"{args.suite}: {'pass' if ok else 'FAIL'} ({sum(c.ok for c in checks)}/{len(checks)})")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_formula(args, cfg: RunConfig) -> int:
    values = formula_values(args.n)
    if cfg.output_format == "json":
        out = {"n": args.n}
        out.update({v.kind: v.value for v in values})
        _emit(out)
    else:
        for v in values:
            print(f"{v.kind} = {v.value}")
    return EXIT_OK


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="output format (default: json, text for verify)")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CLOSURE_CAP,
                        help=f"closure size cap (default {DEFAULT_CLOSURE_CAP})")
    common.add_argument("--aut-bound", type=_positive, default=DEFAULT_AUT_BOUND,
                        help=f"largest group order for automorphism search (default {DEFAULT_AUT_BOUND})")
    common.add_argument("--effort-cap", type=_positive, default=DEFAULT_EFFORT_CAP,
                        help="backtracking node budget per search")
    common.add_argument("--workers", type=_positive, default=None,
                        help="parallel workers for enumeration (default: available CPUs)")
    common.add_argument("--timings", action="store_true",
                        help="include elapsed_ms in reports (output is then not byte-reproducible)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hg", description="Count Hopf-Galois structures via regular subgroups of holomorphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="#E(G,N), or every N of order |G|")
    c.add_argument("--G", required=True, help="group spec, e.g. S4, A4xC2, gens:4:(1 2);(1 2 3 4)")
    c.add_argument("--N", help="group spec of the same order; omit to sweep the catalog")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("formula", parents=[common], help="closed-form counts for S_n")
    f.add_argument("--n", type=_positive, required=True)
    f.set_defaults(func=cmd_formula)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fmt = args.format or ("text" if args.command == "verify" else "json")
    try:
        cfg = RunConfig(args.cap, args.aut_bound, args.effort_cap,
                        args.workers or _default_workers(), fmt, args.timings)
        return args.func(args, cfg)
    except (ParseError, CatalogError) as exc:
        print(f"hg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"hg: error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HGError as exc:
        print(f"hg: error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
