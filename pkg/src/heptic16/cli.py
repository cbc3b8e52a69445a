"""Command line entry point: ``heptic16 <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .curve import InputError
from .report import RunConfig, run

EXIT_INPUT = 3

COMMANDS = ("verify-p5", "verify-p4", "verify-p3", "curve-cert", "delta-audit", "all")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heptic16", description="Check the degree-16 heptic argument step by step.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--seed", type=int, default=0, help="seed for primes and coordinate changes")
    p.add_argument("--primes", type=int, default=2, help="number of primes that must agree (>= 2)")
    p.add_argument("--exact", action="store_true", help="use rational arithmetic only")
    p.add_argument("--truncation", type=int, default=16, help="power series truncation order T")
    p.add_argument("--max-depth", type=int, default=16, help="depth limit of the rewriting search")
    p.add_argument("--syzygies", default="u3", help="syzygy file, or u3/t3 for the bundled readings")
    p.add_argument("--catalog", default=None, help="singularity catalog JSON (default: bundled)")
    p.add_argument("--report", type=Path, default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.seed < 0 or args.primes < 2 or args.truncation < 2 or args.max_depth < 0:
        print("error: seed must be >= 0, primes >= 2, truncation >= 2, max-depth >= 0", file=sys.stderr)
        return EXIT_INPUT
    cfg = RunConfig(args.seed, args.primes, args.exact, args.truncation, args.max_depth,
                    args.syzygies, args.catalog)
    try:
        report = run(args.command, cfg)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # malformed catalog records and invalid parameters surface as ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.report:
        args.report.write_text(text)
    else:
        sys.stdout.write(text)
    for s in report.warnings():
        logging.warning("%s: claimed %r, computed %r", s.id, s.claimed_value, s.computed_value)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
