from __future__ import annotations

import math

import numpy as np
import pytest

from application.diagnostics_service import distribution
from application.walk_service import (
    adjoint_step,
    alternating_schedule,
    coin_matrix,
    constant_schedule,
    evolve,
    fibonacci_blocks,
    fibonacci_schedule,
    fibonacci_word,
    initial_state,
    iter_states,
    step,
)
from domain.errors import InvalidAngleError, NormalizationError, ScheduleError
from domain.models import CoinAngle

QUARTER = math.pi / 4


@pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 4, math.pi / 3])
def test_coin_is_orthogonal_and_self_inverse(theta):
    coin = coin_matrix(theta)
    assert np.allclose(coin @ coin.conj().T, np.eye(2), atol=1e-15)
    assert np.allclose(coin @ coin, np.eye(2), atol=1e-15)


@pytest.mark.parametrize("theta", [0.0, math.pi / 2, -0.1, float("nan")])
def test_coin_angle_rejects_values_outside_open_interval(theta):
    with pytest.raises(InvalidAngleError):
        CoinAngle(theta)


def test_initial_state_requires_normalization():
    with pytest.raises(NormalizationError) as info:
        initial_state(1.0, 0.1)
    assert info.value.norm == pytest.approx(1.01)


def test_two_steps_from_left_chirality():
    state = evolve(initial_state(1.0, 0.0, capacity=2), constant_schedule(QUARTER, 2), 2)
    dist = distribution(state)
    assert dist.sites.tolist() == [-2, 0, 2]
    assert dist.probabilities == pytest.approx([0.25, 0.5, 0.25], abs=1e-15)


def test_single_step_moves_components_in_opposite_directions():
    state = step(initial_state(1.0, 0.0), QUARTER)
    assert state.pair(-1).left == pytest.approx(math.cos(QUARTER))
    assert state.pair(1).right == pytest.approx(math.sin(QUARTER))
    assert state.pair(0).probability == 0.0


def test_adjoint_step_undoes_step(symmetric_state):
    schedule = fibonacci_schedule(math.pi / 3, math.pi / 6, horizon=40)
    start = symmetric_state(capacity=40)
    state = evolve(start, schedule, 40)
    for theta in schedule.angles(40)[::-1]:
        state = adjoint_step(state, float(theta))
    assert state.time == 0
    assert state.pair(0).left == pytest.approx(start.pair(0).left, abs=1e-13)
    assert state.pair(0).right == pytest.approx(start.pair(0).right, abs=1e-13)
    assert state.total_probability() == pytest.approx(1.0, abs=1e-13)


def test_evolution_preserves_norm(symmetric_state):
    schedule = fibonacci_schedule(math.pi / 3, math.pi / 6, horizon=500)
    state = evolve(symmetric_state(), schedule, 500)
    assert abs(state.total_probability() - 1.0) <= 1e-12


def test_zero_steps_returns_initial_state(symmetric_state):
    start = symmetric_state()
    state = evolve(start, constant_schedule(QUARTER, 1), 0)
    assert state.time == 0
    assert state.pair(0) == start.pair(0)


def test_symmetric_initial_state_gives_mirror_symmetric_distribution(symmetric_state):
    schedule = fibonacci_schedule(math.pi / 3, math.pi / 6, horizon=300)
    dist = distribution(evolve(symmetric_state(), schedule, 300))
    assert np.allclose(dist.probabilities, dist.probabilities[::-1], atol=1e-12)


def test_degenerate_fibonacci_matches_constant_exactly(symmetric_state):
    theta = 0.6
    fib = distribution(evolve(symmetric_state(), fibonacci_schedule(theta, theta, horizon=120), 120))
    const = distribution(evolve(symmetric_state(), constant_schedule(theta, 120), 120))
    assert np.array_equal(fib.probabilities, const.probabilities)


def test_fibonacci_word_prefixes():
    assert fibonacci_word(1) == "1"
    assert fibonacci_word(2) == "12"
    assert fibonacci_word(5) == "12212"
    assert fibonacci_word(13).startswith(fibonacci_word(5))
    assert fibonacci_word(5, ordering="reversed") == "21221"


def test_standard_odd_blocks_are_word_prefixes():
    blocks = fibonacci_blocks(9)
    word = fibonacci_word(len(blocks[-1]))
    for index in range(1, 10, 2):
        block = blocks[index - 1]
        assert word[: len(block)] == block


def test_reversed_blocks_are_nested():
    blocks = fibonacci_blocks(8, ordering="reversed")
    for shorter, longer in zip(blocks[1:], blocks[2:]):
        assert longer.startswith(shorter)


def test_fibonacci_letter_ratio_approaches_golden_mean():
    word = fibonacci_word(10_000)
    ratio = word.count("2") / word.count("1")
    assert ratio == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-2)


def test_schedule_angles_follow_word():
    schedule = alternating_schedule(0.3, 0.9, horizon=5)
    assert schedule.word == "12121"
    assert schedule.angles(5).tolist() == [0.3, 0.9, 0.3, 0.9, 0.3]
    assert constant_schedule(0.4, 3).angles(3).tolist() == [0.4, 0.4, 0.4]


def test_schedule_shorter_than_evolution_raises(symmetric_state):
    with pytest.raises(ScheduleError):
        evolve(symmetric_state(), constant_schedule(QUARTER, 10), 11)


def test_orderings_produce_different_digests():
    standard = fibonacci_schedule(math.pi / 3, math.pi / 6, horizon=64)
    reversed_ = fibonacci_schedule(math.pi / 3, math.pi / 6, horizon=64, ordering="reversed")
    assert standard.digest() != reversed_.digest()
    assert len(standard.digest()) == 64


def test_iter_states_yields_requested_times(symmetric_state):
    schedule = constant_schedule(QUARTER, 50)
    times = [state.time for state in iter_states(symmetric_state(), schedule, 50, times=[0, 10, 50, 99])]
    assert times == [0, 10, 50]


def test_iter_states_snapshots_are_independent(symmetric_state):
    schedule = constant_schedule(QUARTER, 4)
    snapshots = list(iter_states(symmetric_state(), schedule, 4))
    assert [s.time for s in snapshots] == [0, 1, 2, 3, 4]
    assert snapshots[0].pair(0).probability == pytest.approx(1.0)
    with pytest.raises(ValueError):
        snapshots[0].amplitudes[0, 0] = 1.0
