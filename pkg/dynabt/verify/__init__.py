"""
Verification

Brute-force ground truth, the mechanism contract checker and the
termination monitor.
"""

from .contract import Counterexample, MechanismReport, check_mechanism
from .monitor import MonitorReport, Nogood, TerminationMonitor, monitor_run
from .oracle import DEFAULT_MAX_SPACE, brute_force, check_space, consistent, extends, satisfies, solution_space

__all__ = [
    "DEFAULT_MAX_SPACE",
    "Counterexample",
    "MechanismReport",
    "MonitorReport",
    "Nogood",
    "TerminationMonitor",
    "brute_force",
    "check_mechanism",
    "check_space",
    "consistent",
    "extends",
    "monitor_run",
    "satisfies",
    "solution_space",
]
