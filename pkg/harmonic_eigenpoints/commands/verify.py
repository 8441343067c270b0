"""
verify / eigen - re-certify a polynomial or tensor document from scratch.
"""

from __future__ import annotations

import argparse

from harmonic_eigenpoints.commands.base import (
    EXIT_OK,
    EXIT_UNCERTIFIED,
    Command,
    CommandOutcome,
    add_solver_arguments,
    solver_overrides,
)
from harmonic_eigenpoints.commands.documents import load_input, write_document
from harmonic_eigenpoints.config import SolverConfig
from harmonic_eigenpoints.sphere_solver import SolveReport, SphereSolver, certify


class VerifyCommand(Command):
    """Runs an independent solver pass and checks it against 2 m_{d,n}."""

    name = "verify"
    help = "re-certify the critical points of a polynomial, tensor or construction file"
    list_pairs = False

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("path", help="polynomial, tensor or construction document")
        parser.add_argument("--out", default=None, help="write the solver report to this file")
        add_solver_arguments(parser)

    def handle(self, args: argparse.Namespace) -> CommandOutcome:
        loaded = load_input(args.path)
        config = SolverConfig(**solver_overrides(args))
        solver = SphereSolver(config, logger=self.logger.getChild("solver"))
        report = solver.find_critical_points(loaded.polynomial)

        self._print_report(report)
        if args.out is not None:
            write_document(report.to_document(), args.out)
            self._log(f"Wrote report to {args.out}")

        if not report.certified:
            code = self.fail(
                EXIT_UNCERTIFIED,
                f"{report.found_count}/{report.expected_count} critical points found, not certified",
                report.diagnostics,
            )
            return CommandOutcome(code, args.out)

        self.echo(f"{report.found_count}/{report.expected_count} certified")
        if self.list_pairs:
            for pair in certify(report, loaded.tensor):
                coords = ", ".join(f"{v:.17g}" for v in pair.x)
                self.echo(f"lambda={pair.lambda_:.17g} x=({coords}) residual={pair.residual:.3e}")
        return CommandOutcome(EXIT_OK, args.out)

    def _print_report(self, report: SolveReport) -> None:
        census = ", ".join(f"{index}: {count}" for index, count in report.index_census.items())
        self.echo(f"expected {report.expected_count}, found {report.found_count}")
        self.echo(f"index census {{{census}}}")
        self.echo(f"euler sum {report.euler_sum}")
        self.echo(f"diagnostics: {report.diagnostics}")


class EigenCommand(VerifyCommand):
    """verify, followed by the certified eigenpair listing."""

    name = "eigen"
    help = "verify and list the eigenpairs (x, lambda) of the tensor"
    list_pairs = True
