"""
Command-line entry point.

    harmonic-eigenpoints construct --d 3 --n 3 --out m33.json
    harmonic-eigenpoints verify m33.json
    harmonic-eigenpoints eigen m33.json
    harmonic-eigenpoints rank1 m33.json
    harmonic-eigenpoints plotdata m33.json --grid 90 --out m33.csv

Exit codes: 0 certified, 1 certification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from harmonic_eigenpoints import __version__
from harmonic_eigenpoints.commands import COMMANDS
from harmonic_eigenpoints.commands.base import EXIT_BAD_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-eigenpoints",
        description="Harmonic polynomials and traceless symmetric tensors with all eigenpoints real.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command.name, help=command.help)
        command.add_arguments(sub)
        sub.set_defaults(handler=command)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return EXIT_BAD_INPUT if exit_.code not in (0, None) else 0
    return args.handler().run(args)


if __name__ == "__main__":
    sys.exit(main())
