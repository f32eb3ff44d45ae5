"""Per-invocation run journal for the lab CLI."""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Optional

logger = logging.getLogger(__name__)


class RunJournal:
    """Records what a CLI run did: command, events, outcome."""

    def __init__(self, log_dir: str = "logs"):
        """Initialize the journal.

        Args:
            log_dir: Directory to save run journals
        """
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        # One text + one JSON file per run
        self.started = datetime.now()
        stamp = self.started.strftime("%Y%m%d_%H%M%S_%f")
        self.log_file = self.log_dir / f"run_{stamp}.txt"
        self.json_file = self.log_dir / f"run_{stamp}.json"

        self.entries: list[dict[str, Any]] = []
        self.exit_code: Optional[int] = None
        self._initialize_log()

    def _initialize_log(self):
        with open(self.log_file, "w", encoding="utf-8") as f:
            f.write("=" * 80 + "\n")
            f.write("           QUANTUM WALK LAB RUN\n")
            f.write(f"           Started: {self.started.strftime('%Y-%m-%d %H:%M:%S')}\n")
            f.write("=" * 80 + "\n\n")

        logger.debug(f"Run journal initialized: {self.log_file}")

    def _append(self, kind: str, message: str, data: Optional[dict] = None,
                timestamp: Optional[datetime] = None):
        timestamp = timestamp or datetime.now()
        entry = {"kind": kind, "message": message, "timestamp": timestamp.isoformat()}
        if data:
            entry["data"] = data
        self.entries.append(entry)

        with open(self.log_file, "a", encoding="utf-8") as f:
            f.write(f"[{timestamp.strftime('%H:%M:%S')}] {kind.upper()}: {message}\n")

    def log_command(self, argv: list[str]):
        """Log the command line that started the run.

        Args:
            argv: Arguments after the program name
        """
        self._append("command", " ".join(argv) or "<no arguments>")

    def log_spec(self, spec: dict):
        """Log the fully-resolved sweep configuration."""
        self._append("spec", json.dumps(spec, sort_keys=True), data=spec)

    def log_event(self, event: str, data: Optional[dict] = None):
        """Log a run event (sweep finished, file written, failure).

        Args:
            event: Event description
            data: Optional structured payload
        """
        self._append("event", event, data)

    def save_json(self):
        with open(self.json_file, "w", encoding="utf-8") as f:
            json.dump(
                {
                    "started": self.started.isoformat(),
                    "exit_code": self.exit_code,
                    "entries": self.entries,
                },
                f,
                indent=2,
            )

    def finalize(self, exit_code: int):
        """Close the journal with the exit code and save JSON."""
        self.exit_code = exit_code
        with open(self.log_file, "a", encoding="utf-8") as f:
            f.write("\n" + "=" * 80 + "\n")
            f.write(f"Run ended: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
            f.write(f"Exit code: {exit_code}\n")
            f.write(f"Total entries: {len(self.entries)}\n")
            f.write("=" * 80 + "\n")

        self.save_json()
        logger.debug(f"Run journal finalized: {self.log_file}")

    def get_transcript(self) -> str:
        with open(self.log_file, "r", encoding="utf-8") as f:
            return f.read()
