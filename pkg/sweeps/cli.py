"""
Command-line driver.

Subcommands:
  overlap-sweep   delta0 / delta1 / overlap over (P, T)
  keyrate-sweep   sampling-based random-bit rates over (Q, P, N)
  verify          invariant suite; exit status 3 on any failure
  walk-dump       position distribution for one (P, T)

Exit codes: 0 success, 1 configuration error, 2 computation error, 3 verification failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from errors import ConfigurationError, ConsistencyError, EmissionError, RejectedInputError
from run_journal import RunJournal
from settings import load_settings
from sweeps.runner import run_keyrate_sweep, run_overlap_sweep, walk_dump
from sweeps.spec import SweepSpec, parse_spec, parse_time
from sweeps.table import emit
from sweeps.verify import VerifyGrid, verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_COMPUTE = 2
EXIT_VERIFY = 3

# CLI flag dest -> config key
_FLAG_KEYS = {
    "p": "p",
    "time": "time",
    "t": "t",
    "noise": "noise",
    "n_range": "n_range",
    "sample_frac": "sample_frac",
    "epsilon": "epsilon",
    "mode": "mode",
    "seed": "seed",
    "format": "format",
    "out": "out",
    "kind": "kind",
}


class LabArgumentParser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit 1), not argparse's exit 2."""

    def error(self, message: str):
        raise ConfigurationError(None, message)


def _add_sweep_flags(p: argparse.ArgumentParser, tables: bool = True) -> None:
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--p", help="P list or range, e.g. 3,5,11 or 2..101")
    p.add_argument("--time", help="equal-p or a fixed walk time")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--seed", help="seed for Monte Carlo mode and random checks")
    if tables:
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--workers", type=int, default=1, help="parallel grid workers")
        p.add_argument("--timestamp", action="store_true", help="add a generation timestamp to metadata")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--journal-dir", help="run journal directory ('' disables)")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = LabArgumentParser(prog="lab", description="Quantum walk POVM overlap and key-rate lab")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=LabArgumentParser)

    overlap = sub.add_parser("overlap-sweep", parents=[common], help="delta0/delta1 over (P, T)")
    _add_sweep_flags(overlap)
    overlap.add_argument("--kind", choices=["overlap-dim", "overlap-time"])
    overlap.add_argument("--t", help="walk-time list for overlap-time, e.g. 1..100")

    keyrate = sub.add_parser("keyrate-sweep", parents=[common], help="random-bit rates over (Q, P, N)")
    _add_sweep_flags(keyrate)
    keyrate.add_argument("--noise", help="noise list, e.g. 0,0.15,0.2")
    keyrate.add_argument("--n-range", help="start:stop:factor")
    keyrate.add_argument("--sample-frac", help="m/N in (0, 1)")
    keyrate.add_argument("--epsilon", help="failure parameter in (0, 1)")
    keyrate.add_argument("--mode", choices=["deterministic", "montecarlo"])

    check = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    _add_sweep_flags(check, tables=False)
    check.add_argument("--t", help="walk-time list, checked at every P")
    check.add_argument("--matrix-samples", type=int, default=200, help="random matrices per norm axiom")

    dump = sub.add_parser("walk-dump", parents=[common], help="position distribution for one (P, T)")
    dump.add_argument("--p", type=int, required=True)
    dump.add_argument("--time", default="equal-p")
    dump.add_argument("--c0", type=int, default=0)
    dump.add_argument("--x0", type=int, default=0)
    dump.add_argument("--format", choices=["csv", "json"], default="csv")
    dump.add_argument("--out")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, str]:
    return {
        key: str(getattr(args, dest))
        for dest, key in _FLAG_KEYS.items()
        if getattr(args, dest, None) is not None
    }


def load_spec(args: argparse.Namespace, default_kind: str) -> SweepSpec:
    source = ""
    if args.config:
        try:
            source = Path(args.config).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError("config", f"cannot read {args.config}: {e}") from e
    return parse_spec(source, overrides=_overrides(args), defaults={"kind": default_kind})


def _cmd_overlap(args: argparse.Namespace, journal: Optional[RunJournal]) -> int:
    spec = load_spec(args, "overlap-dim")
    if spec.kind == "keyrate":
        raise ConfigurationError("kind", "overlap-sweep needs kind overlap-dim or overlap-time")
    if journal:
        journal.log_spec(spec.model_dump(mode="json"))
    table = run_overlap_sweep(spec, workers=args.workers, timestamp=args.timestamp)
    emit(table, spec.format, spec.out)
    if journal:
        journal.log_event(f"overlap sweep emitted {len(table.rows)} rows", {"out": spec.out})
    return EXIT_OK


def _cmd_keyrate(args: argparse.Namespace, journal: Optional[RunJournal]) -> int:
    spec = load_spec(args, "keyrate")
    if spec.kind != "keyrate":
        raise ConfigurationError("kind", "keyrate-sweep needs kind keyrate")
    if journal:
        journal.log_spec(spec.model_dump(mode="json"))
    table = run_keyrate_sweep(spec, workers=args.workers, timestamp=args.timestamp)
    emit(table, spec.format, spec.out)
    if journal:
        journal.log_event(f"key-rate sweep emitted {len(table.rows)} rows", {"out": spec.out})
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, journal: Optional[RunJournal]) -> int:
    if args.config or args.p or args.time or args.t:
        spec = load_spec(args, "overlap-dim")
        if spec.kind == "overlap-time" or args.t:
            spec = spec.model_copy(update={"kind": "overlap-time"})
        grid = VerifyGrid.from_spec(spec, matrix_samples=args.matrix_samples)
    else:
        grid = VerifyGrid.default().model_copy(update={"matrix_samples": args.matrix_samples})
        if args.seed is not None:
            try:
                grid = grid.model_copy(update={"seed": int(args.seed)})
            except ValueError as e:
                raise ConfigurationError("seed", f"invalid value {args.seed!r}") from e

    verdict = verify(grid)
    text = verdict.model_dump_json(indent=2) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise EmissionError(args.out, str(e)) from e
    else:
        sys.stdout.write(text)

    if journal:
        journal.log_event(
            "verification finished",
            {"passed": verdict.passed, "checks": verdict.total_checks, "failed": [p.name for p in verdict.failed()]},
        )
    return EXIT_OK if verdict.passed else EXIT_VERIFY


def _cmd_walk_dump(args: argparse.Namespace, journal: Optional[RunJournal]) -> int:
    try:
        time = parse_time(args.time)
    except ValueError as e:
        raise ConfigurationError("time", str(e)) from e
    T = args.p if time == "equal-p" else time
    table = walk_dump(args.p, T, args.c0, args.x0)
    emit(table, args.format, args.out)
    if journal:
        journal.log_event("walk dump emitted", {"P": args.p, "T": T, "gamma": table.metadata["gamma"]})
    return EXIT_OK


COMMANDS = {
    "overlap-sweep": _cmd_overlap,
    "keyrate-sweep": _cmd_keyrate,
    "verify": _cmd_verify,
    "walk-dump": _cmd_walk_dump,
}


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    journal: Optional[RunJournal] = None

    try:
        settings = load_settings()
        args = build_parser().parse_args(argv)
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    journal_dir = settings.journal_dir if args.journal_dir is None else args.journal_dir
    if journal_dir:
        journal = RunJournal(journal_dir)
        journal.log_command(argv)

    try:
        code = COMMANDS[args.command](args, journal)
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        code = EXIT_CONFIG
    except (ConsistencyError, RejectedInputError, EmissionError, ValidationError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        code = EXIT_COMPUTE

    if journal:
        if code != EXIT_OK:
            journal.log_event(f"run failed with exit code {code}")
        journal.finalize(code)
    return code


if __name__ == "__main__":
    sys.exit(main())
