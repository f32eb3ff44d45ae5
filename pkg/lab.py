"""
Quantum walk lab entry point for the command line.

All logic lives in the packages:
  sweeps/cli.py  subcommands, exit codes
  povm_lab/      POVMs and overlaps
  entropy_kit/   entropy and key-length formulas
  walk_engine/   quantum walk on a cycle
  linalg_core/   dense complex linear algebra
"""

import logging
import sys

from dotenv import load_dotenv

load_dotenv(".env")

from settings import log_level  # noqa: E402
from sweeps.cli import main  # noqa: E402

logging.basicConfig(
    level=getattr(logging, log_level(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)

if __name__ == "__main__":
    sys.exit(main())
