"""
Sweep runners for overlap and key-rate grids.

  overlap-dim / overlap-time → one row per (P, T) with delta0, delta1, overlap_c
  keyrate                    → one row per (Q, P, N) with ell_new, rate_new, ell_standard

Grid points are independent; with workers > 1 they run on a thread pool
(numpy releases the GIL in LAPACK calls). Rows are sorted before returning,
so the table never depends on evaluation order.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from itertools import product
from typing import Callable, Iterable, Optional, TypeVar

import numpy as np

from entropy_kit import KeyRateInput, draw_observed_weight, sampling_key_length
from errors import ConfigurationError, ConsistencyError
from povm_lab import overlap_report
from settings import TOOL_VERSION
from sweeps.spec import SweepSpec
from sweeps.table import ResultTable
from walk_engine import evolve, gamma, position_distribution

logger = logging.getLogger(__name__)

OVERLAP_SCHEMA = ["P", "T", "delta0", "delta1", "overlap_c", "max_abs_disagreement"]
KEYRATE_SCHEMA = ["Q", "P", "D", "N", "m", "gamma", "delta", "ell_new", "rate_new", "ell_standard", "eps_closeness"]
WALK_DUMP_SCHEMA = ["z", "prob"]

# Overlaps within this distance of 1 are the trivial value up to roundoff.
OVERLAP_SNAP_ATOL = 1e-9

P_ = TypeVar("P_")
R_ = TypeVar("R_")


def table_metadata(spec: Optional[SweepSpec], timestamp: bool = False, **extra) -> dict:
    meta: dict = {"tool_version": TOOL_VERSION}
    if spec is not None:
        meta["spec"] = spec.model_dump(mode="json", exclude={"out"})
    if timestamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    meta.update(extra)
    return meta


def _map_points(fn: Callable[[P_], R_], points: Iterable[P_], workers: int) -> list[R_]:
    points = list(points)
    if workers <= 1 or len(points) <= 1:
        return [fn(p) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, points))


# ─── Overlap sweeps ───────────────────────────────────────────────

def overlap_grid(spec: SweepSpec) -> list[tuple[int, int]]:
    if spec.kind == "overlap-time":
        return [(P, T) for P in spec.p_values for T in spec.t_values]
    return [(P, spec.time_for(P)) for P in spec.p_values]


def run_overlap_sweep(spec: SweepSpec, workers: int = 1, timestamp: bool = False) -> ResultTable:
    """delta0 / delta1 / overlap_c for every grid point of an overlap sweep."""
    if spec.kind not in ("overlap-dim", "overlap-time"):
        raise ConfigurationError("kind", f"overlap sweep cannot run kind {spec.kind!r}")

    points = overlap_grid(spec)
    logger.info(f"Overlap sweep ({spec.kind}): {len(points)} grid points, workers={workers}")

    def run_point(point: tuple[int, int]) -> list[float]:
        P, T = point
        try:
            report = overlap_report(P, T, spec.c0, spec.x0)
        except ConsistencyError as e:
            raise ConsistencyError(f"Overlap sweep aborted at grid point P={P}, T={T}: {e}") from e
        return [P, T, report.delta0, report.delta1, report.overlap_c, report.max_abs_disagreement]

    rows = sorted(_map_points(run_point, points, workers), key=lambda r: (r[0], r[1]))
    logger.info(f"Overlap sweep complete: max overlap_c = {max(r[4] for r in rows):.12g}")
    return ResultTable(schema=OVERLAP_SCHEMA, rows=rows, metadata=table_metadata(spec, timestamp))


# ─── Key-rate sweeps ──────────────────────────────────────────────

class WalkStatsCache:
    """gamma and overlap per (P, T), computed once and shared across N points."""

    def __init__(self, c0: int = 0, x0: int = 0):
        self.c0 = c0
        self.x0 = x0
        self._gamma: dict[tuple[int, int], float] = {}
        self._overlap: dict[tuple[int, int], float] = {}
        self._lock = threading.Lock()

    def gamma(self, P: int, T: int) -> float:
        key = (P, T)
        with self._lock:
            if key in self._gamma:
                return self._gamma[key]
        value = gamma(evolve(self.c0, self.x0, P, T))
        with self._lock:
            self._gamma[key] = value
        logger.debug(f"gamma(P={P}, T={T}) = {value:.12g}")
        return value

    def overlap(self, P: int, T: int) -> float:
        key = (P, T)
        with self._lock:
            if key in self._overlap:
                return self._overlap[key]
        c = overlap_report(P, T, self.c0, self.x0).overlap_c
        if abs(c - 1.0) <= OVERLAP_SNAP_ATOL:
            c = 1.0
        with self._lock:
            self._overlap[key] = c
        return c


def sample_size(N: int, sample_frac: float) -> int:
    """m = round(f N), kept inside [1, N - 1]."""
    return min(max(int(round(sample_frac * N)), 1), N - 1)


def run_keyrate_sweep(spec: SweepSpec, workers: int = 1, timestamp: bool = False) -> ResultTable:
    """ell_new, rate_new and ell_standard for every (Q, P, N)."""
    if spec.kind != "keyrate":
        raise ConfigurationError("kind", f"key-rate sweep cannot run kind {spec.kind!r}")

    cache = WalkStatsCache(spec.c0, spec.x0)
    walk_points = [(P, spec.time_for(P)) for P in spec.p_values]
    # Warm the cache first so the per-N points never re-evolve a walk.
    _map_points(lambda pt: (cache.gamma(*pt), cache.overlap(*pt)), walk_points, workers)

    montecarlo = spec.mode == "montecarlo"
    n_values = spec.n_values
    grid = list(product(enumerate(spec.noise), enumerate(spec.p_values), enumerate(n_values)))
    logger.info(f"Key-rate sweep: {len(grid)} points ({spec.mode}), workers={workers}")

    def run_point(point) -> list[float]:
        (qi, Q), (pi, P), (ni, N) = point
        T = spec.time_for(P)
        m = sample_size(N, spec.sample_frac)
        if montecarlo:
            rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(qi, pi, ni)))
            w_q = draw_observed_weight(Q, m, rng)
        else:
            w_q = Q
        row = sampling_key_length(
            KeyRateInput(
                N=N,
                m=m,
                w_q=w_q,
                eps=spec.epsilon,
                P=P,
                gamma=cache.gamma(P, T),
                overlap=cache.overlap(P, T),
            )
        )
        values = [Q, P, 2 * P, N, m, row.input.gamma, row.delta, row.ell_new, row.rate_new, row.ell_standard, row.eps_closeness]
        if montecarlo:
            values.append(w_q)
        return values

    rows = sorted(_map_points(run_point, grid, workers), key=lambda r: (r[0], r[1], r[3]))
    schema = KEYRATE_SCHEMA + (["w_q"] if montecarlo else [])
    return ResultTable(schema=schema, rows=rows, metadata=table_metadata(spec, timestamp))


# ─── Walk dump ────────────────────────────────────────────────────

def walk_dump(P: int, T: int, c0: int = 0, x0: int = 0) -> ResultTable:
    """Position distribution of W^T |c0, x0> as a table."""
    dist = position_distribution(evolve(c0, x0, P, T))
    rows = [[float(z), float(p)] for z, p in enumerate(dist.probs)]
    meta = table_metadata(
        None,
        walk={"P": P, "T": T, "c0": c0, "x0": x0},
        gamma=dist.gamma,
        entropy_bits=dist.entropy_bits,
        min_entropy_bits=dist.min_entropy_bits,
    )
    return ResultTable(schema=WALK_DUMP_SCHEMA, rows=rows, metadata=meta)
