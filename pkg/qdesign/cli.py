#!/usr/bin/env python3
"""CLI for running qdesign experiments locally."""

import argparse
import logging
import sys
from pathlib import Path

from qdesign.config import Config
from qdesign.formats import dump_report
from qdesign.handler import COMMANDS, handle
from qdesign.models import DesignMode, TableRowKind

GLOBAL_FLAGS = ("out", "log_level")


def _add(sub, name: str, help_text: str, common: argparse.ArgumentParser) -> argparse.ArgumentParser:
    return sub.add_parser(name, help=help_text, parents=[common], allow_abbrev=False)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--out", help="Write the JSON report here instead of stdout")
    common.add_argument("--threads", type=int, help=f"Worker threads (default {Config.DEFAULT_THREADS})")
    common.add_argument("--log-level", default=Config.LOG_LEVEL, help="Logging level on stderr")
    common.add_argument("--budget", type=int, help="Enumeration budget for this command")

    parser = argparse.ArgumentParser(
        prog="qdesign",
        description="Designs over finite fields, their groups and their codes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
        epilog="""
Examples:
  qdesign gauss --n 4 --k 2 --q 2
  qdesign design-verify --file events/complete_2_4_3.json
  qdesign km-search --q 2 --n 6 --t 2 --k 3 --lam 3
  qdesign poly-factor-xn1 --q 5 --n 8
  qdesign code-cyclic --q 2 --n 7 --g "1 1 0 1"
  qdesign dh --q 11 --seed 42
  qdesign table-check --row cyclic-q-1 --q 7
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = _add(sub, "gauss", "Gaussian binomial [n k]_q", common)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = _add(sub, "subspaces", "List every k-subspace of F_q^n", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = _add(sub, "orbits", "Orbits of k-subspaces under a group", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--group", default="singer", help='"singer" or the path of a group file')

    p = _add(sub, "singer", "Singer cycle of GL(n,q)", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)

    p = _add(sub, "splitting-count", "Count r-dimensional splitting subspaces of a Singer cycle", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = _add(sub, "design-verify", "Verify a design file", common)
    p.add_argument("--file", required=True)
    p.add_argument("--graph", action="store_true", help="Also report the point graph of a 2-design")
    p.add_argument("--cw-code", action="store_true", help="Also report the constant-weight code of the blocks")

    p = _add(sub, "km-search", "Kramer-Mesner search under a prescribed group", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lam", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in DesignMode], default=DesignMode.EXACT.value)
    p.add_argument("--group", default="singer", help='"singer", "none" or the path of a group file')
    p.add_argument("--max-solutions", type=int)
    p.add_argument("--node-budget", type=int)

    p = _add(sub, "gdd-verify", "Verify a group divisible design file", common)
    p.add_argument("--file", required=True)

    p = _add(sub, "largeset-check", "Check that design files partition all k-subspaces", common)
    p.add_argument("--files", nargs="+", required=True)

    p = _add(sub, "pg2", "Line design of PG(2,p)", common)
    p.add_argument("--p", type=int, required=True)

    p = _add(sub, "nrc-arc", "Normal rational curve as an arc", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, help="Size of the subsets tested for independence (default n+1)")

    p = _add(sub, "code-rs", "Reed-Solomon code", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--points", help="Evaluation point codes (default all nonzero elements)")

    p = _add(sub, "rs-family", "RS codes of length q-1, one per generator of F_q^*, read as a design", common)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, help="Code dimension (default the largest proper divisor of q-1)")
    p.add_argument("--t", type=int, default=1)

    p = _add(sub, "code-cyclic", "Cyclic code from a generator polynomial", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", required=True, help="Coefficient codes, lowest degree first")

    p = _add(sub, "code-goppa", "Goppa code at genus 0", common)
    p.add_argument("--q", required=True, help="Field of the locators and f")
    p.add_argument("--locators", required=True, help="Locator codes")
    p.add_argument("--f", required=True, help="Goppa polynomial, lowest degree first")
    p.add_argument("--subfield", help="Subfield of the code (default the prime field)")

    for name, help_text in (
        ("code-dual", "Dual of a code file"),
        ("code-mindist", "Minimum distance and weight distribution"),
        ("code-qc-index", "Quasi-cyclic index"),
    ):
        p = _add(sub, name, help_text, common)
        p.add_argument("--file", required=True)

    p = _add(sub, "code-action", "Image of a code under a coordinate permutation", common)
    p.add_argument("--file", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--perm", help="Permutation as space separated 0-based positions")
    group.add_argument("--reverse", action="store_true", help="Coordinate reversal")

    p = _add(sub, "code-count-cyclic", "Count cyclic codes of length n", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)

    p = _add(sub, "code-coset", "Coset leader of a received word", common)
    p.add_argument("--file", required=True)
    p.add_argument("--word", required=True, help="Word as space separated codes")

    p = _add(sub, "poly-factor-xn1", "Factor x^n - 1", common)
    p.add_argument("--q", required=True, help="Field size or p^e")
    p.add_argument("--n", type=int, required=True)

    p = _add(sub, "poly-cyclotomic", "Cyclotomic polynomial, optionally reduced over F_q", common)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", help="Field size or p^e")

    p = _add(sub, "poly-count-irr", "Count irreducible and separable polynomials", common)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--l", type=int, required=True)

    for name, help_text in (
        ("poly-partfrac", "Partial fractions of f/g"),
        ("poly-contfrac", "Continued fraction of f/g"),
    ):
        p = _add(sub, name, help_text, common)
        p.add_argument("--q", required=True, help="Field size or p^e")
        p.add_argument("--f", required=True, help="Numerator, lowest degree first")
        p.add_argument("--g", required=True, help="Denominator, lowest degree first")

    p = _add(sub, "poly-count-invariant", "Count irreducibles fixed by x -> a x", common)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["auto", "brute", "formula"], default="auto")

    p = _add(sub, "dh", "Key exchange over a dihedral group (insecure, for teaching)", common)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--eavesdrop", action="store_true", help="Recover the shared key by brute force")

    p = _add(sub, "dlp", "Discrete log in the rotations of D_N (insecure, for teaching)", common)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--base", type=int, default=1)
    p.add_argument("--reflection", action="store_true", help="Target is a reflection")

    p = _add(sub, "cayley", "Cayley graph of Z_N", common)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--S", default="", help="Connection set as space separated residues")

    p = _add(sub, "table-check", "Spot check a group table row", common)
    p.add_argument("--row", choices=TableRowKind.list_rows(), required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--node-budget", type=int)

    missing = set(COMMANDS) - set(sub.choices)
    if missing:
        raise RuntimeError(f"Commands without a parser: {sorted(missing)}")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    event = {k: v for k, v in vars(args).items() if k not in GLOBAL_FLAGS and v is not None and v is not False}
    result = handle(event)

    text = dump_report(result["body"]) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return result["exit_code"]


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
