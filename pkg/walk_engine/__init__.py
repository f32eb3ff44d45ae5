"""Quantum walk on a cycle: operators, evolution and position statistics."""

from walk_engine.cycle_walk import (
    HADAMARD,
    PositionDistribution,
    WalkState,
    basis_state,
    evolve,
    gamma,
    position_distribution,
    require_normalized,
    shift_operator,
    walk_operator,
)

__all__ = [
    "HADAMARD",
    "PositionDistribution",
    "WalkState",
    "basis_state",
    "evolve",
    "gamma",
    "position_distribution",
    "require_normalized",
    "shift_operator",
    "walk_operator",
]
