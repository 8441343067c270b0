"""
construct - build and certify M_{d,n} level by level.
"""

from __future__ import annotations

import argparse

from harmonic_eigenpoints.commands.base import (
    EXIT_OK,
    Command,
    CommandOutcome,
    add_solver_arguments,
    solver_overrides,
)
from harmonic_eigenpoints.commands.documents import write_document
from harmonic_eigenpoints.config import ConstructionParams, SolverConfig
from harmonic_eigenpoints.constructor import ConstructionResult, Constructor, construct_degree_one
from harmonic_eigenpoints.errors import ArgumentError


class ConstructCommand(Command):
    """Runs the certified construction and writes the result document."""

    name = "construct"
    help = "construct a harmonic polynomial with the maximal number of real critical points"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--d", type=int, required=True, help="degree d >= 1")
        parser.add_argument("--n", type=int, required=True, help="number of variables n >= 2")
        parser.add_argument("--eps-start", type=float, default=None, help="first epsilon tried (default 0.1)")
        parser.add_argument("--eps-floor", type=float, default=None, help="smallest epsilon tried (default 1e-6)")
        parser.add_argument("--eps-ratio", type=float, default=None, help="schedule ratio (default 0.5)")
        parser.add_argument(
            "--phase",
            type=float,
            nargs=2,
            metavar=("A", "B"),
            default=None,
            help="base level a*cos(d theta) + b*sin(d theta) (default 1 0)",
        )
        parser.add_argument("--out", default=None, help="output file (default: stdout)")
        add_solver_arguments(parser)

    def handle(self, args: argparse.Namespace) -> CommandOutcome:
        if args.d < 1:
            raise ArgumentError(f"--d must be at least 1, got {args.d}")
        if args.n < 2:
            raise ArgumentError(f"--n must be at least 2, got {args.n}")

        overrides = solver_overrides(args)
        if args.d == 1:
            result = construct_degree_one(args.n, SolverConfig(**overrides))
        else:
            params = self._params(args)
            extra = {"starts_per_expected_point": args.starts} if args.starts is not None else {}
            constructor = Constructor(params, logger=self.logger, solver_config=params.solver_config(**extra))
            result = constructor.construct()

        self._summarize(result)
        text = write_document(result.to_document(), args.out)
        if args.out is None:
            self.echo(text)
        else:
            self._log(f"Wrote construction to {args.out}")
        return CommandOutcome(EXIT_OK, args.out)

    def _params(self, args: argparse.Namespace) -> ConstructionParams:
        values: dict[str, object] = {"d": args.d, "n_target": args.n}
        if args.eps_start is not None:
            values["epsilon_start"] = args.eps_start
        if args.eps_floor is not None:
            values["epsilon_floor"] = args.eps_floor
        if args.eps_ratio is not None:
            values["epsilon_ratio"] = args.eps_ratio
        if args.phase is not None:
            values["base_phase"] = tuple(args.phase)
        if args.seed is not None:
            values["seed"] = args.seed
        return ConstructionParams(**values)

    def _summarize(self, result: ConstructionResult) -> None:
        for level in result.levels:
            eps = "-" if level.epsilon_used is None else f"{level.epsilon_used:g}"
            message = (
                f"level n={level.n}: {level.certificate.count} critical points certified "
                f"(epsilon {eps}, min margin {level.certificate.min_margin:.3e})"
            )
            self.stderr.write(message + "\n")
            self._log(message)
