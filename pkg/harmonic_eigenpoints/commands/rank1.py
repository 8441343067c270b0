"""
rank1 - best rank-one approximation from the certified eigenpairs.
"""

from __future__ import annotations

import argparse

from harmonic_eigenpoints.commands.base import (
    EXIT_BAD_INPUT,
    EXIT_OK,
    Command,
    CommandOutcome,
    add_solver_arguments,
    solver_overrides,
)
from harmonic_eigenpoints.commands.documents import load_input
from harmonic_eigenpoints.config import SolverConfig
from harmonic_eigenpoints.sphere_solver import SphereSolver, certify
from harmonic_eigenpoints.tensor_bridge import best_rank_one, grid_rank_one_distance


class Rank1Command(Command):
    """Prints lambda*, x*, dist and the eigenvalue table of a certified tensor."""

    name = "rank1"
    help = "best rank-one approximation of a certified tensor"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("path", help="polynomial, tensor or construction document")
        parser.add_argument(
            "--grid-points",
            type=int,
            default=0,
            help="also report the brute-force minimum over this many sphere points",
        )
        add_solver_arguments(parser)

    def handle(self, args: argparse.Namespace) -> CommandOutcome:
        loaded = load_input(args.path)
        config = SolverConfig(**solver_overrides(args))
        report = SphereSolver(config, logger=self.logger.getChild("solver")).find_critical_points(loaded.polynomial)
        if not report.certified:
            code = self.fail(EXIT_BAD_INPUT, "rank1 needs a tensor with a certified eigenpair set", report.diagnostics)
            return CommandOutcome(code)

        pairs = certify(report, loaded.tensor)
        best = best_rank_one(loaded.tensor, pairs)

        coords = ", ".join(f"{v:.17g}" for v in best.x)
        self.echo(f"lambda* {best.lambda_:.17g}")
        self.echo(f"x* ({coords})")
        self.echo(f"dist {best.dist:.17g}")
        self.echo(f"dist direct {best.dist_direct:.17g}")
        if best.tie:
            self.echo("note: several eigenvectors attain the largest |lambda|")
        if args.grid_points > 0:
            self.echo(f"dist grid {grid_rank_one_distance(loaded.tensor, args.grid_points, seed=config.seed):.17g}")

        self.echo("eigenvalues by |lambda|:")
        for pair in sorted(pairs, key=lambda p: (-abs(p.lambda_), p.x)):
            self.echo(f"  {pair.lambda_:+.17g}  ({', '.join(f'{v:.17g}' for v in pair.x)})")
        return CommandOutcome(EXIT_OK)
