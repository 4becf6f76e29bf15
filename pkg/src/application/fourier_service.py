"""Análise no espaço de momentos: matriz de transferência M(k), espectro e evolução via Fourier.

Convenção: F(k) = Σ_n e^{i(k - π/2)n} ψ_n evolui exatamente por M(k). A caminhada descrita
difere das recorrências apenas pelo fator unimodular i^{n+t} nas duas componentes, logo as
distribuições coincidem. A reconstrução usa e^{-ikn} na malha (equivalente à FFT).
"""
from __future__ import annotations

import logging
from typing import Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from application.walk_service import AngleLike, as_angle, fibonacci_word, initial_state
from domain.errors import GridError, NumericalError, ScheduleError
from domain.models import CoinSchedule, MomentumGrid, Ordering, PositionDistribution, SpectralData

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10

FloatOrArray = Union[float, NDArray[np.float64]]


def _transfer_stack(nodes: NDArray[np.float64], theta: AngleLike) -> NDArray[np.complex128]:
    angle = as_angle(theta)
    c, s = angle.cos, angle.sin
    left = 1j * np.exp(-1j * nodes)
    right = 1j * np.exp(1j * nodes)
    stack = np.empty(nodes.shape + (2, 2), dtype=np.complex128)
    stack[..., 0, 0] = left * c
    stack[..., 0, 1] = left * s
    stack[..., 1, 0] = right * s
    stack[..., 1, 1] = -right * c
    return stack


def transfer_matrix(k: float, theta: AngleLike) -> NDArray[np.complex128]:
    """M(k) = [[i e^{-ik} cos θ, i e^{-ik} sin θ], [i e^{ik} sin θ, -i e^{ik} cos θ]]."""
    return _transfer_stack(np.asarray(float(k)), theta)


def dispersion(k: ArrayLike, theta: AngleLike) -> FloatOrArray:
    """w(k) = arccos(cos θ · sin k) em [0, π]; equivale a sin w = sqrt(1 - sin²k cos²θ)."""
    angle = as_angle(theta)
    w = np.arccos(np.clip(angle.cos * np.sin(np.asarray(k, dtype=np.float64)), -1.0, 1.0))
    return float(w) if np.ndim(w) == 0 else w


def group_velocity(k: ArrayLike, theta: AngleLike) -> Tuple[FloatOrArray, FloatOrArray]:
    """(h1, h2) com h_j = Dλ_j/λ_j, D = i d/dk, λ_1 = e^{iw}, λ_2 = e^{-iw}.

    w'(k) = -cos θ cos k / sin w(k); sin w >= sin θ > 0, sem divisão por zero.
    """
    angle = as_angle(theta)
    k = np.asarray(k, dtype=np.float64)
    sin_w = np.sqrt(1.0 - (angle.cos * np.sin(k)) ** 2)
    dw = -angle.cos * np.cos(k) / sin_w
    h1, h2 = -dw, dw
    if np.ndim(dw) == 0:
        return float(h1), float(h2)
    return h1, h2


def eigensystem(grid: MomentumGrid, theta: AngleLike) -> SpectralData:
    """Autodecomposição numérica de M(k) em cada nó.

    Ramo 0 tem Im λ > 0 (λ = e^{iw}); autovetores unitários com a primeira componente
    real e não negativa.
    """
    angle = as_angle(theta)
    nodes = grid.nodes
    matrices = _transfer_stack(nodes, angle)
    values, vectors = np.linalg.eig(matrices)

    order = np.argsort(-values.imag, axis=1)
    values = np.take_along_axis(values, order, axis=1)
    vectors = np.take_along_axis(vectors, order[:, None, :], axis=2)
    vectors = np.swapaxes(vectors, 1, 2).copy()  # [nó, ramo, componente]

    vectors /= np.linalg.norm(vectors, axis=2, keepdims=True)
    first = vectors[:, :, 0]
    magnitude = np.abs(first)
    phase = np.ones_like(first)
    np.divide(np.conj(first), magnitude, out=phase, where=magnitude > 0)
    vectors *= phase[:, :, None]
    vectors[:, :, 0] = vectors[:, :, 0].real

    applied = np.einsum("nij,nbj->nbi", matrices, vectors)
    residual = np.linalg.norm(applied - values[:, :, None] * vectors, axis=2).max(axis=1)
    bad = np.flatnonzero(residual > RESIDUAL_TOLERANCE)
    if bad.size:
        index = int(bad[0])
        raise NumericalError(
            f"Resíduo do autovetor {residual[index]:.3e} acima da tolerância no nó {index} (k = {nodes[index]:.6f})",
            node_index=index,
        )

    h1, h2 = group_velocity(nodes, angle)
    return SpectralData(
        theta=angle,
        nodes=nodes,
        dispersion=dispersion(nodes, angle),
        eigenvalues=values,
        eigenvectors=vectors,
        group_velocities=np.column_stack((h1, h2)),
    )


def word_transfer(k: float, theta1: AngleLike, theta2: AngleLike, word: str) -> NDArray[np.complex128]:
    """Produto ordenado no tempo: a letra mais recente fica à esquerda."""
    matrices = {
        "1": transfer_matrix(k, theta1),
        "2": transfer_matrix(k, theta2),
    }
    product = np.eye(2, dtype=np.complex128)
    for letter in word:
        product = matrices[letter] @ product
    return product


def fibonacci_transfer(
    k: float,
    theta1: AngleLike,
    theta2: AngleLike,
    steps: int,
    ordering: Ordering = "standard",
) -> NDArray[np.complex128]:
    return word_transfer(k, theta1, theta2, fibonacci_word(steps, ordering))


def fibonacci_trace(
    k: float,
    theta1: AngleLike,
    theta2: AngleLike,
    steps: int,
    ordering: Ordering = "standard",
) -> complex:
    return complex(np.trace(fibonacci_transfer(k, theta1, theta2, steps, ordering)))


def evolve_fourier(
    alpha: complex,
    beta: complex,
    schedule: CoinSchedule,
    steps: int,
    grid: MomentumGrid,
) -> PositionDistribution:
    """Evolui (alpha, beta) na origem por Π_s M(k, θ_s) e reconstrói P(N_t = n).

    A malha precisa de N >= 2·steps + 2 nós para a reconstrução ser exata.
    """
    minimum = 2 * steps + 2
    if grid.size < minimum:
        raise GridError(
            f"Malha de {grid.size} nós é pequena para {steps} passos; mínimo N = {minimum}",
            minimum_size=minimum,
        )
    if steps > schedule.horizon:
        raise ScheduleError(f"Agenda cobre {schedule.horizon} passos, mas a evolução pede {steps}")
    # valida a normalização do estado inicial
    initial_state(alpha, beta)

    nodes = grid.nodes
    left = 1j * np.exp(-1j * nodes)
    right = 1j * np.exp(1j * nodes)
    f = np.full(grid.size, alpha, dtype=np.complex128)
    g = np.full(grid.size, beta, dtype=np.complex128)
    for theta in schedule.angles(steps):
        c, s = np.cos(theta), np.sin(theta)
        f, g = left * (c * f + s * g), right * (s * f - c * g)

    # (1/N) Σ_j e^{-i k_j n} F_j = (-1)^n FFT(F)[n mod N] / N; o fator (-1)^n só muda
    # a fase e fica de fora de |·|²
    sites = np.arange(-steps, steps + 1, 2, dtype=np.int64)
    index = np.mod(sites, grid.size)
    upper = np.fft.fft(f)[index] / grid.size
    lower = np.fft.fft(g)[index] / grid.size
    probabilities = np.abs(upper) ** 2 + np.abs(lower) ** 2
    logger.debug("Evolução em Fourier: %d passos, malha N = %d", steps, grid.size)
    return PositionDistribution(time=steps, sites=sites, probabilities=probabilities)


def limit_moment(r: int, alpha: complex, beta: complex, theta: AngleLike, grid: MomentumGrid) -> float:
    """Limite de E[(N_t/t)^r] pela decomposição espectral (caminhada homogênea).

    ∫ Σ_j v_j(k)^r |<v_j(k)|ψ_0>|² dk/2π, com v_j = -h_j: a transformada inversa usa
    e^{-ikn}, o que inverte o sinal da velocidade em relação a h_j. Na malha uniforme a
    regra do trapézio é espectralmente precisa (integrando periódico e suave).
    """
    if r < 0:
        raise ValueError(f"Ordem do momento deve ser >= 0, recebido {r}")
    initial_state(alpha, beta)
    spectral = eigensystem(grid, theta)
    psi0 = np.array([alpha, beta], dtype=np.complex128)
    overlaps = np.abs(np.einsum("nbi,i->nb", np.conj(spectral.eigenvectors), psi0)) ** 2
    velocities = -spectral.group_velocities
    return float(np.mean(np.sum(velocities ** r * overlaps, axis=1)))
