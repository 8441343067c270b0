"""CLI command handlers, one module per subcommand."""

from harmonic_eigenpoints.commands.base import Command, CommandOutcome
from harmonic_eigenpoints.commands.construct import ConstructCommand
from harmonic_eigenpoints.commands.plotdata import PlotDataCommand
from harmonic_eigenpoints.commands.rank1 import Rank1Command
from harmonic_eigenpoints.commands.verify import EigenCommand, VerifyCommand

COMMANDS: tuple[type[Command], ...] = (
    ConstructCommand,
    VerifyCommand,
    EigenCommand,
    Rank1Command,
    PlotDataCommand,
)

__all__ = [
    "COMMANDS",
    "Command",
    "CommandOutcome",
    "ConstructCommand",
    "EigenCommand",
    "PlotDataCommand",
    "Rank1Command",
    "VerifyCommand",
]
