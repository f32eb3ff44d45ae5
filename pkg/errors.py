"""Exception hierarchy shared by every lab package."""

from typing import Optional


class LabError(Exception):
    """Base class for all lab errors."""


class RejectedInputError(LabError, ValueError):
    """A precondition on an operation's input was violated."""


class ConfigurationError(LabError, ValueError):
    """Sweep configuration is malformed or violates an invariant."""

    def __init__(self, key: Optional[str], message: str):
        self.key = key
        prefix = f"[{key}] " if key else ""
        super().__init__(f"{prefix}{message}")


class ConsistencyError(LabError, RuntimeError):
    """Numeric results disagree with their analytic prediction."""


class EmissionError(LabError, OSError):
    """A result table could not be written."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"Failed to write {path}: {message}")
