from __future__ import annotations

import math

import numpy as np
import pytest

from application.diagnostics_service import distribution
from application.fourier_service import (
    dispersion,
    eigensystem,
    evolve_fourier,
    fibonacci_trace,
    fibonacci_transfer,
    group_velocity,
    limit_moment,
    transfer_matrix,
    word_transfer,
)
from application.walk_service import (
    alternating_schedule,
    constant_schedule,
    evolve,
    fibonacci_schedule,
    initial_state,
)
from domain.errors import GridError
from domain.models import MomentumGrid

SQRT_HALF = 1.0 / math.sqrt(2.0)
ALPHA, BETA = complex(SQRT_HALF, 0.0), complex(0.0, SQRT_HALF)
ANGLES = [math.pi / 6, math.pi / 4, math.pi / 3]


@pytest.mark.parametrize("theta", ANGLES)
def test_transfer_matrix_is_unitary(theta):
    for k in np.linspace(-math.pi, math.pi, 17):
        m = transfer_matrix(k, theta)
        assert np.allclose(m @ m.conj().T, np.eye(2), atol=1e-14)


def test_dispersion_at_zero_momentum_is_quarter_turn():
    for theta in ANGLES:
        assert dispersion(0.0, theta) == pytest.approx(math.pi / 2, abs=1e-15)


@pytest.mark.parametrize("theta", ANGLES)
def test_dispersion_identity(theta):
    k = MomentumGrid(1024).nodes
    w = dispersion(k, theta)
    assert np.max(np.abs(np.sin(w) ** 2 + np.sin(k) ** 2 * math.cos(theta) ** 2 - 1.0)) <= 1e-12


@pytest.mark.parametrize("theta", ANGLES)
def test_numerical_eigenvalues_match_dispersion(theta):
    spectral = eigensystem(MomentumGrid(1024), theta)
    expected = np.column_stack((np.exp(1j * spectral.dispersion), np.exp(-1j * spectral.dispersion)))
    assert np.max(np.abs(spectral.eigenvalues - expected)) <= 1e-10
    assert np.allclose(np.abs(spectral.eigenvalues), 1.0, atol=1e-12)


def test_eigenvectors_are_unit_with_real_first_component():
    spectral = eigensystem(MomentumGrid(256), math.pi / 4)
    norms = np.linalg.norm(spectral.eigenvectors, axis=2)
    assert np.allclose(norms, 1.0, atol=1e-12)
    first = spectral.eigenvectors[:, :, 0]
    assert np.all(first.imag == 0.0)
    assert np.all(first.real >= 0.0)


@pytest.mark.parametrize("theta", ANGLES)
def test_group_velocity_bounded_by_cosine(theta):
    k = np.linspace(-math.pi, math.pi, 513)
    h1, h2 = group_velocity(k, theta)
    assert np.max(np.abs(h1)) <= math.cos(theta) + 1e-12
    assert np.allclose(h1, -h2)
    assert h1[256] == pytest.approx(math.cos(theta))


def test_group_velocity_matches_numerical_derivative():
    theta, k, eps = math.pi / 3, 0.37, 1e-6
    numeric = (dispersion(k + eps, theta) - dispersion(k - eps, theta)) / (2 * eps)
    h1, _ = group_velocity(k, theta)
    assert h1 == pytest.approx(-numeric, rel=1e-6)


@pytest.mark.parametrize(
    "schedule",
    [
        constant_schedule(math.pi / 4, 256),
        alternating_schedule(math.pi / 3, math.pi / 6, 256),
        fibonacci_schedule(math.pi / 3, math.pi / 6, horizon=256),
    ],
    ids=["constant", "alternating", "fibonacci"],
)
def test_position_and_fourier_evolutions_agree(schedule):
    steps = 256
    direct = distribution(evolve(initial_state(ALPHA, BETA, capacity=steps), schedule, steps))
    spectral = evolve_fourier(ALPHA, BETA, schedule, steps, MomentumGrid(2 * steps + 2))
    assert spectral.sites.tolist() == direct.sites.tolist()
    assert np.max(np.abs(spectral.probabilities - direct.probabilities)) <= 1e-10


def test_fourier_evolution_from_asymmetric_state_keeps_orientation():
    schedule = constant_schedule(math.pi / 4, 64)
    direct = distribution(evolve(initial_state(1.0, 0.0, capacity=64), schedule, 64))
    spectral = evolve_fourier(1.0, 0.0, schedule, 64, MomentumGrid(256))
    assert np.max(np.abs(spectral.probabilities - direct.probabilities)) <= 1e-10


def test_fourier_grid_too_small_raises():
    with pytest.raises(GridError) as info:
        evolve_fourier(ALPHA, BETA, constant_schedule(math.pi / 4, 10), 10, MomentumGrid(21))
    assert info.value.minimum_size == 22


def test_word_transfer_applies_latest_letter_on_the_left():
    k = 0.8
    m1, m2 = transfer_matrix(k, 0.4), transfer_matrix(k, 1.1)
    assert np.allclose(word_transfer(k, 0.4, 1.1, "12"), m2 @ m1)


def test_degenerate_fibonacci_trace_is_power_trace():
    k, theta = 1.3, math.pi / 5
    expected = np.trace(np.linalg.matrix_power(transfer_matrix(k, theta), 8))
    assert fibonacci_trace(k, theta, theta, 8) == pytest.approx(complex(expected), abs=1e-12)


def test_limit_moments_of_symmetric_state():
    theta = math.pi / 4
    grid = MomentumGrid(4096)
    assert limit_moment(0, ALPHA, BETA, theta, grid) == pytest.approx(1.0, abs=1e-12)
    assert limit_moment(1, ALPHA, BETA, theta, grid) == pytest.approx(0.0, abs=1e-10)
    assert limit_moment(2, ALPHA, BETA, theta, grid) == pytest.approx(1.0 - math.sin(theta), abs=1e-8)


def test_limit_mean_of_left_chirality_hadamard_walk():
    mean = limit_moment(1, 1.0, 0.0, math.pi / 4, MomentumGrid(4096))
    assert mean == pytest.approx(-(1.0 - SQRT_HALF), abs=1e-8)


def test_transfer_matrix_at_zero_momentum():
    expected = 1j * SQRT_HALF * np.array([[1, 1], [1, -1]])
    assert np.allclose(transfer_matrix(0.0, math.pi / 4), expected, atol=1e-15)


def test_dispersion_at_half_pi():
    assert math.sin(dispersion(math.pi / 2, math.pi / 4)) == pytest.approx(SQRT_HALF)


def test_fourier_evolution_of_zero_steps():
    dist = evolve_fourier(ALPHA, BETA, constant_schedule(math.pi / 4, 1), 0, MomentumGrid(2))
    assert dist.masses == {0: pytest.approx(1.0)}


def test_single_letter_fibonacci_transfer_is_first_matrix():
    assert np.array_equal(fibonacci_transfer(0.4, 0.3, 1.2, 1), transfer_matrix(0.4, 0.3))


@pytest.mark.parametrize("theta", ANGLES)
def test_transfer_matrix_trace_and_determinant(theta):
    for k in np.linspace(-math.pi, math.pi, 17):
        m = transfer_matrix(k, theta)
        assert np.trace(m) == pytest.approx(2 * math.cos(theta) * math.sin(k), abs=1e-14)
        assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("theta", ANGLES)
def test_eigenvalues_are_conjugate_pair(theta):
    values = eigensystem(MomentumGrid(512), theta).eigenvalues
    assert np.allclose(values[:, 0] * values[:, 1], 1.0, atol=1e-12)
    assert np.allclose(values[:, 0], np.conj(values[:, 1]), atol=1e-12)


@pytest.mark.parametrize("theta", ANGLES)
def test_group_velocity_vanishes_at_half_pi(theta):
    h1, h2 = group_velocity(np.array([-math.pi / 2, math.pi / 2]), theta)
    assert np.max(np.abs(h1)) <= 1e-15
    assert np.max(np.abs(h2)) <= 1e-15


@pytest.mark.parametrize("k", [-2.1, -0.6, 0.37, 1.2, 2.8])
def test_group_velocity_matches_phase_of_numerical_eigenvalue(k):
    theta, eps = math.pi / 3, 1e-6

    def phase(q):
        values = np.linalg.eigvals(transfer_matrix(q, theta))
        return float(np.angle(values[np.argmax(values.imag)]))

    numeric = (phase(k + eps) - phase(k - eps)) / (2 * eps)
    h1, _ = group_velocity(k, theta)
    assert h1 == pytest.approx(-numeric, abs=1e-7)
