"""Command line entry point: ``integdistill <inputs...> [options]``."""
from __future__ import annotations

import argparse
import sys

from .report import EXIT_CONFIG, REPORTS, ConfigError, RunConfig, load_config_file, run


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as a semantic error
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(
        prog="integdistill",
        description="Coupling-based integration analysis of MiniOO (.moo) sources.",
    )
    ap.add_argument("inputs", nargs="*", help=".moo files, directories or glob patterns")
    ap.add_argument("--paths", action="store_true", help="generated test paths")
    ap.add_argument("--defuse", action="store_true", help="def-use log of class fields")
    ap.add_argument("--invocations", action="store_true", help="invocation point analysis")
    ap.add_argument("--metrics", action="store_true", help="class metrics and most used class")
    ap.add_argument("--all", action="store_true", help="every report (the default)")
    ap.add_argument("--json", metavar="FILE", help="also write the report as JSON")
    ap.add_argument("--out", metavar="DIR", help="write report.txt and rewritten sources here")
    mode = ap.add_mutually_exclusive_group()
    mode.add_argument("--instrument", action="store_true", help="add timing probes at invocation points")
    mode.add_argument("--strip", action="store_true", help="remove previously added probes")
    ap.add_argument("--in-place", action="store_true", help="rewrite input files instead of writing copies")
    ap.add_argument("--config", metavar="FILE", help="key=value config (builtin_classes, probe_before, probe_after)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    chosen = tuple(r for r in REPORTS if getattr(args, r))
    config = RunConfig(
        inputs=list(args.inputs),
        reports=REPORTS if args.all or not chosen else chosen,
        instrumentation="add" if args.instrument else "strip" if args.strip else "off",
        out_dir=args.out,
        json_path=args.json,
        in_place=args.in_place,
    )
    if args.config:
        try:
            load_config_file(args.config, config)
        except (ConfigError, OSError) as exc:
            print(f"integdistill: error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    _, code = run(config)
    return code


if __name__ == "__main__":
    sys.exit(main())
