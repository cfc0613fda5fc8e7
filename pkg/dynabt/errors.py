"""
Exception hierarchy shared by the library and the command-line interface.
"""

from typing import Optional


class DynabtError(Exception):
    """Base class for every error raised on purpose by dynabt"""


class ProblemError(DynabtError):
    """A problem or assignment does not satisfy the model invariants"""


class ProblemFormatError(DynabtError):
    """An input file (problem JSON, crossword frame, wordlist) could not be parsed"""

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        location = ''
        if path:
            location = path
            if line is not None:
                location += f":{line}"
                if column is not None:
                    location += f":{column}"
            location += ': '
        elif line is not None:
            location = f"line {line}, column {column or 1}: "
        super().__init__(f"{location}{message}")


class ConfigError(DynabtError):
    """Bad configuration value or command-line parameter"""


class OracleGuardError(DynabtError):
    """The exhaustive search space exceeds the configured guard"""

    def __init__(self, size: int, guard: int):
        self.size = size
        self.guard = guard
        super().__init__(f"search space of {size} assignments exceeds the oracle guard of {guard}")


class InvariantViolation(DynabtError):
    """An engine run broke one of its bookkeeping invariants (debug mode)"""


class MonitorViolation(DynabtError):
    """The termination monitor observed a claim failing"""

    def __init__(self, event_index: int, claim: str, message: str):
        self.event_index = event_index
        self.claim = claim
        self.message = message
        super().__init__(f"event {event_index}: {claim}: {message}")
