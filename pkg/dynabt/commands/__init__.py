"""
dynabt Commands

Command Pattern implementation for the dynabt CLI.
Each command is implemented in its own module.
"""

from .base import BaseCommand
from .bench import BenchCommand
from .check import CheckCommand
from .config import ConfigCommand
from .gen import GenCommand
from .solve import SolveCommand
from .trace import TraceCommand

__all__ = [
    'BaseCommand',
    'BenchCommand',
    'CheckCommand',
    'ConfigCommand',
    'GenCommand',
    'SolveCommand',
    'TraceCommand',
]
