"""Exception types raised by the harness itself.

Solution defects never raise: they are encoded as verdicts.  Exceptions are
reserved for harness-level failures (broken manifests, corrupt stores,
unresolvable solver commands, oracle tractability bounds).
"""

from __future__ import annotations


class HarnessError(Exception):
    """Base class for all harness failures."""


class ManifestParseError(HarnessError):
    """Manifest file is syntactically or structurally malformed."""


class MissingFileError(HarnessError):
    """One or more instance files listed in a manifest do not exist."""

    def __init__(self, missing: list[str]):
        self.missing = list(missing)
        super().__init__("missing instance files: " + ", ".join(self.missing))


class InvariantError(HarnessError):
    """A manifest or record violates a structural invariant."""


class StoreCorruptError(HarnessError):
    """A submission store line cannot be parsed."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        super().__init__(f"store line {line_number}: {reason}")


class OutOfOrderError(HarnessError):
    """Appending a record whose timestamp precedes the last stored one."""


class UnknownProblemError(HarnessError):
    """problem_id does not name a registered problem."""


class SpawnError(HarnessError):
    """Solver command could not be started."""


class TooLargeError(HarnessError):
    """Instance exceeds an oracle's exhaustive-search tractability bound."""


class InvalidScheduleError(HarnessError):
    """A simulation schedule violates its structural constraints."""
