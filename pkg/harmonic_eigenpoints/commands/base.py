"""
Base class for CLI command handlers.

A handler declares its flags, does its work in `handle` and returns a
CommandOutcome. `run` maps library errors onto the exit-code contract and
prints the handler's guidance on every non-zero exit.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Optional, TextIO

from pydantic import ValidationError

from harmonic_eigenpoints.errors import ArgumentError, CertificationError, describe
from harmonic_eigenpoints.log import create_default_logger

EXIT_OK = 0
EXIT_UNCERTIFIED = 1
EXIT_BAD_INPUT = 2


BAD_INPUT_GUIDANCE = """The input could not be used.

Check that:
  - the file exists and holds a polynomial, tensor or construction document
  - degrees and dimensions are in range (d >= 1, n >= 2)
  - numeric flags are positive where required

Run with HARMONIC_EIGENPOINTS_VERBOSE=1 for a detailed log."""


UNCERTIFIED_GUIDANCE = """The critical point count could not be certified.

Possible causes:
  - the polynomial is not Morse on the sphere (degenerate critical circles)
  - epsilon was too small or too large for the solver tolerances
  - too few starts; try a larger --starts value or another --seed

The diagnostics above list what the solver observed."""


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report_path: Optional[str] = None


class Command:
    """A single CLI subcommand."""

    name: str = ""
    help: str = ""

    def __init__(self, stdout: TextIO | None = None, stderr: TextIO | None = None) -> None:
        self.logger = create_default_logger(type(self).__name__)
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Register the command's flags."""

    def handle(self, args: argparse.Namespace) -> CommandOutcome:
        raise NotImplementedError

    def run(self, args: argparse.Namespace) -> int:
        try:
            outcome = self.handle(args)
        except CertificationError as error:
            self._log(f"Uncertified: {describe(error)}")
            return self.fail(EXIT_UNCERTIFIED, str(error), getattr(error, "diagnostics", ""))
        except (ArgumentError, ValidationError) as error:
            self._log(f"Bad input: {error}")
            return self.fail(EXIT_BAD_INPUT, str(error))
        self._log(f"{self.name} finished with exit code {outcome.exit_code}")
        return outcome.exit_code

    def fail(self, exit_code: int, reason: str, diagnostics: str = "") -> int:
        """Print the reason and guidance to stderr and return the exit code."""
        guidance = UNCERTIFIED_GUIDANCE if exit_code == EXIT_UNCERTIFIED else BAD_INPUT_GUIDANCE
        print(reason, file=self.stderr)
        if diagnostics:
            print(f"diagnostics: {diagnostics}", file=self.stderr)
        print(guidance, file=self.stderr)
        return exit_code

    def echo(self, message: str = "") -> None:
        print(message, file=self.stdout)

    def _log(self, message: str) -> None:
        """Log a message if logger is available."""
        if self.logger:
            self.logger.info(message)


def add_solver_arguments(parser: argparse.ArgumentParser) -> None:
    """--seed and --starts, shared by every command that runs the solver."""
    parser.add_argument("--seed", type=int, default=None, help="solver seed (default 0xC0FFEE)")
    parser.add_argument(
        "--starts",
        type=int,
        default=None,
        help="random starts per expected critical point (default 50, minimum 10)",
    )


def solver_overrides(args: argparse.Namespace) -> dict[str, int]:
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "starts", None) is not None:
        overrides["starts_per_expected_point"] = args.starts
    return overrides
