"""Command line front end.

Usage::

    cohiggs TASK_FILE [--format text|json|csv] [--oracle] [--seed N] [--jobs N]

Exit status: 0 success, 1 usage or document error, 2 a mathematical
precondition failed, 3 internal error. The seed defaults to $COHIGGS_SEED,
then 0, and is echoed in every report.
"""
from __future__ import annotations

import argparse
import os
import sys

from .document import parse
from .errors import CoHiggsError
from .report import emit, run


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cohiggs", description="Co-Higgs existence, P1 fields, Segre invariants.")
    ap.add_argument("task_file", help="task document (JSON); '-' reads stdin")
    ap.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ap.add_argument("--oracle", action="store_true", help="cross-check closed forms with the brute-force oracle")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomised internals (default $COHIGGS_SEED or 0)")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    return ap


def _seed(arg):
    if arg is not None:
        return arg
    env = os.environ.get("COHIGGS_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"cohiggs: COHIGGS_SEED must be an integer, got {env!r}") from None
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        seed = _seed(args.seed)
    except SystemExit as exc:
        print(exc, file=sys.stderr)
        return 1
    if args.jobs < 1:
        print("cohiggs: --jobs must be >= 1", file=sys.stderr)
        return 1
    try:
        if args.task_file == "-":
            text = sys.stdin.read()
        else:
            with open(args.task_file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"cohiggs: {exc}", file=sys.stderr)
        return 1
    try:
        doc = parse(text)
        out = emit(run(doc, seed=seed, oracle=args.oracle, jobs=args.jobs), args.format)
    except CoHiggsError as exc:
        print(f"cohiggs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        print(f"cohiggs: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
