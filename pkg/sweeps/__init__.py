"""Sweep configuration, runners, emission and the CLI driver."""

from sweeps.runner import run_keyrate_sweep, run_overlap_sweep, walk_dump
from sweeps.spec import SweepSpec, parse_spec, to_config_text
from sweeps.table import ResultTable, emit, load_csv_table
from sweeps.verify import VerifyGrid, VerifyVerdict, verify

__all__ = [
    "ResultTable",
    "SweepSpec",
    "VerifyGrid",
    "VerifyVerdict",
    "emit",
    "load_csv_table",
    "parse_spec",
    "run_keyrate_sweep",
    "run_overlap_sweep",
    "to_config_text",
    "verify",
    "walk_dump",
]
