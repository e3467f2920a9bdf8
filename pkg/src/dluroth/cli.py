"""Command-line entry point.

Exit codes: 0 success, 2 malformed input or arguments, 3 degenerate input,
4 retries exhausted / degree cap / oracle unavailable, 5 oracle disagreement.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InputSyntaxError, LurothError
from .parser import parse_input
from .pipeline import ORACLES, RunConfig, run_pipeline, to_json, to_text
from .prolongation import DEFAULT_ATTEMPTS, DEFAULT_COEFF_BOUND


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="dluroth",
        description="Compute a Luroth generator of the differential field generated "
                    "by rational functions of u.",
    )
    p.add_argument("input", nargs="?", default="-",
                   help="file with generators such as \"(u)/(u'); (u + u')\" (default: stdin)")
    p.add_argument("-e", "--expr", help="generators given inline instead of a file")
    p.add_argument("--seed", type=int, default=0, help="64-bit seed for every random draw")
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                   help="certify the generator by the proportionality check (default: on)")
    p.add_argument("--oracle", choices=ORACLES, default="none",
                   help="cross-check M against Groebner elimination")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--max-degree", type=int, default=None, help="cap on the ansatz degree")
    p.add_argument("--coeff-bound", type=int, default=DEFAULT_COEFF_BOUND,
                   help="random jet coordinates are drawn from [-B, B]")
    p.add_argument("--attempts", type=int, default=DEFAULT_ATTEMPTS, help="retry cap")
    p.add_argument("--paranoid", action="store_true",
                   help="take Jacobian ranks over 3 points instead of one")
    p.add_argument("--timing", action="store_true",
                   help="report wall-clock seconds (makes output run-dependent)")
    return p


def _read(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.input == "-":
        return sys.stdin.read()
    with open(args.input, encoding="utf-8") as fh:
        return fh.read()


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            seed=args.seed,
            verify=args.verify,
            oracle=args.oracle,
            max_degree=args.max_degree,
            coeff_bound=args.coeff_bound,
            attempts=args.attempts,
            output="json" if args.json else "text",
            paranoid=args.paranoid,
            timing=args.timing,
        )
    except ValueError as exc:
        print(f"dluroth: error: {exc}", file=sys.stderr)
        return 2
    try:
        text = _read(args)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"dluroth: error: cannot read input: {exc}", file=sys.stderr)
        return 2
    try:
        gens = parse_input(text)
        result = run_pipeline(gens, config)
    except InputSyntaxError as exc:
        print(f"dluroth: syntax error: {exc}", file=sys.stderr)
        return exc.exit_code
    except LurothError as exc:
        print(f"dluroth: error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(to_json(result) if args.json else to_text(result))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
