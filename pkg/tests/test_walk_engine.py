import math

import numpy as np
import pytest

from errors import RejectedInputError
from linalg_core import identity, operator_norm, unitarity_residual
from walk_engine import (
    WalkState,
    basis_state,
    evolve,
    gamma,
    position_distribution,
    require_normalized,
    shift_operator,
    walk_operator,
)
from tests.helpers import brute_force_state

SQRT_HALF = 1 / math.sqrt(2)


def idx(c: int, x: int, P: int) -> int:
    return c * P + x


def test_shift_moves_coin0_right_and_coin1_left():
    s = shift_operator(3)
    assert s[idx(0, 1, 3), idx(0, 0, 3)] == 1
    assert s[idx(1, 2, 3), idx(1, 0, 3)] == 1
    np.testing.assert_array_equal(s.conj().T @ s, identity(6))


def test_shift_is_a_permutation_with_period_P():
    for P in (2, 3, 7):
        s = shift_operator(P)
        assert np.all(s.sum(axis=0) == 1) and np.all(s.sum(axis=1) == 1)
        np.testing.assert_array_equal(np.linalg.matrix_power(s, P), identity(2 * P))


def test_shift_rejects_small_cycles():
    with pytest.raises(RejectedInputError):
        shift_operator(1)


def test_walk_operator_unitary_for_all_sweep_dimensions():
    for P in range(2, 102):
        assert unitarity_residual(walk_operator(P)) < 1e-10
    assert operator_norm(walk_operator(5)) == pytest.approx(1.0)


def test_walk_operator_p2_example():
    out = walk_operator(2) @ basis_state(0, 0, 2)
    expected = np.zeros(4, dtype=np.complex128)
    expected[idx(0, 1, 2)] = SQRT_HALF
    expected[idx(1, 1, 2)] = SQRT_HALF
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_evolve_time_zero_is_basis_state():
    s = evolve(1, 2, 4, 0)
    assert s.amplitudes[idx(1, 2, 4)] == 1
    assert np.count_nonzero(s.amplitudes) == 1


def test_evolve_rejects_bad_inputs():
    with pytest.raises(RejectedInputError):
        evolve(2, 0, 3, 1)
    with pytest.raises(RejectedInputError):
        evolve(0, 3, 3, 1)
    with pytest.raises(RejectedInputError):
        evolve(0, 0, 3, -1)


@pytest.mark.parametrize("c0, x0, P, T", [(0, 0, 2, 1), (0, 0, 3, 3), (1, 2, 5, 7), (0, 4, 11, 20)])
def test_evolve_matches_brute_force(c0, x0, P, T):
    s = evolve(c0, x0, P, T)
    np.testing.assert_allclose(s.amplitudes, brute_force_state(c0, x0, P, T), atol=1e-12)
    assert s.is_normalized


def test_evolved_state_is_read_only():
    s = evolve(0, 0, 3, 2)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.0


def test_walk_state_shape_checked():
    with pytest.raises(RejectedInputError):
        WalkState(P=3, amplitudes=np.zeros(5))


def test_position_distribution_examples():
    np.testing.assert_array_equal(position_distribution(evolve(0, 0, 4, 0)).probs, [1, 0, 0, 0])
    np.testing.assert_allclose(position_distribution(evolve(0, 0, 2, 1)).probs, [0, 1], atol=1e-15)


def test_gamma_p3_t3_against_hand_evolution():
    # W^3 |0,0> = (|0,0> + 2|0,1> - |0,2> + |1,0> + |1,1>) / (2 sqrt 2)
    dist = position_distribution(evolve(0, 0, 3, 3))
    np.testing.assert_allclose(dist.probs, [0.25, 0.625, 0.125], atol=1e-12)
    assert gamma(evolve(0, 0, 3, 3)) == pytest.approx(0.625)


def test_gamma_p5_t5_against_hand_evolution():
    np.testing.assert_allclose(
        position_distribution(evolve(0, 0, 5, 5)).probs,
        np.array([2, 4, 5, 17, 4]) / 32,
        atol=1e-12,
    )


def test_gamma_bounds():
    assert gamma(evolve(0, 0, 6, 0)) == 1.0
    uniform = WalkState(P=4, amplitudes=np.full(8, 1 / math.sqrt(8)))
    assert gamma(uniform) == pytest.approx(0.25)
    for P in (3, 11, 51):
        assert 1 / P - 1e-12 <= gamma(evolve(0, 0, P, P)) <= 1.0


def test_distribution_entropies():
    dist = position_distribution(evolve(0, 0, 3, 3))
    assert dist.min_entropy_bits == pytest.approx(-math.log2(0.625))
    expected = -sum(p * math.log2(p) for p in (0.25, 0.625, 0.125))
    assert dist.entropy_bits == pytest.approx(expected)
    assert position_distribution(evolve(0, 0, 3, 0)).entropy_bits == 0.0


def test_unnormalized_state_rejected():
    s = WalkState(P=2, amplitudes=np.array([1, 1, 0, 0]))
    with pytest.raises(RejectedInputError, match="not normalized"):
        require_normalized(s)
    with pytest.raises(RejectedInputError):
        position_distribution(s)
