"""Command-line entry point: ``superspin-lab <command> [options]``."""
from __future__ import annotations

import argparse
import math
import sys

from . import liealg as la, superspin as sp
from .numkit import Tolerance
from .report import reports_to_csv, reports_to_json, rows_to_csv, rows_to_json
from .suites import SUITES, TABLE_KINDS, ConfigError, SuiteConfig, emit_table, limit_reports, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p):
    p.add_argument("--tol", type=float, default=1e-10,
                   help="pass tolerance of the default-level checks (default 1e-10)")
    p.add_argument("--grid", type=int, default=256, help="alpha grid size (default 256)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--s0", type=float, default=None, help="impulse s0 (default sqrt(2))")
    p.add_argument("--s3", type=float, default=None, help="impulse s3 (default 1)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superspin-lab", description="Numerical verification suites.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=SUITES + ("all",))
    t = sub.add_parser("table", help="emit a table over the parameter grid")
    t.add_argument("kind", choices=TABLE_KINDS)
    sub.add_parser("limits", help="limit points of the six boost curves")
    sub.add_parser("covering", help="two-to-one covering checks along J3")
    s = sub.add_parser("superspinor-check", help="particle/antiparticle relation at alpha = 0")
    s.add_argument("--bar", choices=sp.BAR_CONVENTIONS, default="plain")
    for p in (v, t, *[sub.choices[n] for n in ("limits", "covering", "superspinor-check")]):
        _common(p)
    return parser


def config_from_args(args) -> SuiteConfig:
    if (args.s0 is None) != (args.s3 is None):
        raise ConfigError("--s0 and --s3 must be given together")
    if args.s0 is None:
        impulse = (math.sqrt(args.mass ** 2 + 1.0), 1.0)
    else:
        impulse = (args.s0, args.s3)
    if not args.tol > 0:
        raise ConfigError("--tol must be positive")
    return SuiteConfig(Tolerance(abs_eps=args.tol), args.grid, args.seed, args.mass, impulse,
                       args.format, args.out)


def _write(text: str, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        if args.command == "table":
            rows = emit_table(args.kind, cfg)
            reports = None
        elif args.command == "verify":
            reports = run_suite(cfg, [args.suite])
        elif args.command == "limits":
            reports = limit_reports(cfg)
        elif args.command == "covering":
            x = la.AlgebraElement.basis("J3")
            reports = [la.covering_check(x, tol=cfg.check_tol), la.covering_witness("J3", cfg.check_tol)]
        else:
            reports = [sp.superspinor_relation(0.0, cfg.mass, cfg.impulse, args.bar)]
    except (ConfigError, sp.ConstraintViolationError) as exc:
        print(f"superspin-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if reports is None:
            text = rows_to_json(rows) if cfg.output_format == "json" else rows_to_csv(rows)
        else:
            text = reports_to_json(reports) if cfg.output_format == "json" else reports_to_csv(reports)
        _write(text, cfg.output_path)
    except OSError as exc:
        print(f"superspin-lab: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if reports is None:
        return EXIT_OK
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
