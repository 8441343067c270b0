"""
plotdata - |f| on a (theta, phi) grid of the 2-sphere, plus critical point markers.
"""

from __future__ import annotations

import argparse
import csv
import io
from pathlib import Path

import numpy as np

from harmonic_eigenpoints.commands.base import (
    EXIT_OK,
    Command,
    CommandOutcome,
    add_solver_arguments,
    solver_overrides,
)
from harmonic_eigenpoints.commands.documents import load_input
from harmonic_eigenpoints.config import SolverConfig
from harmonic_eigenpoints.errors import ArgumentError
from harmonic_eigenpoints.poly_core import HomogeneousPolynomial
from harmonic_eigenpoints.sphere_solver import SolveReport, SphereSolver

HEADER = ("theta", "phi", "abs_value")
MARKER_LINE = "# critical points"
MARKER_HEADER = ("x1", "x2", "x3", "value", "morse_index")


def sphere_table(f: HomogeneousPolynomial, grid: int) -> np.ndarray:
    """Rows (theta, phi, |f|) for grid thetas in [0, pi] and 2*grid phis in [0, 2 pi)."""
    thetas = np.linspace(0.0, np.pi, grid)
    phis = 2.0 * np.pi * np.arange(2 * grid) / (2 * grid)
    theta, phi = np.meshgrid(thetas, phis, indexing="ij")
    theta, phi = theta.ravel(), phi.ravel()
    points = np.column_stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    return np.column_stack([theta, phi, np.abs(f.evaluate(points))])


def render(table: np.ndarray, report: SolveReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(HEADER)
    writer.writerows([repr(float(v)) for v in row] for row in table)
    buffer.write(MARKER_LINE + "\n")
    writer.writerow(MARKER_HEADER)
    for point in report.points:
        writer.writerow([*(repr(v) for v in point.x), repr(point.value), point.morse_index])
    return buffer.getvalue()


class PlotDataCommand(Command):
    """Exports a surface grid of |f| for external plotting."""

    name = "plotdata"
    help = "export |f| on a sphere grid (n = 3 only) as comma-separated values"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("path", help="polynomial, tensor or construction document")
        parser.add_argument("--grid", type=int, default=90, help="theta samples N; the grid has N x 2N rows")
        parser.add_argument("--out", default=None, help="output file (default: stdout)")
        add_solver_arguments(parser)

    def handle(self, args: argparse.Namespace) -> CommandOutcome:
        if args.grid <= 0:
            raise ArgumentError(f"--grid must be positive, got {args.grid}")
        loaded = load_input(args.path)
        f = loaded.polynomial
        if f.n_vars != 3:
            raise ArgumentError(f"plot export is for the 2-sphere only (n = 3), got n = {f.n_vars}")

        config = SolverConfig(**solver_overrides(args))
        report = SphereSolver(config, logger=self.logger.getChild("solver")).find_critical_points(f)
        text = render(sphere_table(f, args.grid), report)
        if args.out is None:
            self.stdout.write(text)
        else:
            Path(args.out).write_text(text)
            self._log(f"Wrote {args.grid * 2 * args.grid} grid rows to {args.out}")
        return CommandOutcome(EXIT_OK, args.out)
