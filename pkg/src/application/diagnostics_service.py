from __future__ import annotations

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from application.limit_service import DEFAULT_SETTINGS, LimitServiceSettings, cdf_values
from application.walk_service import iter_propagation, iter_states
from domain.errors import WalkError
from domain.models import CoinSchedule, LimitDensity, PositionDistribution, ScalingFit, WalkState

logger = logging.getLogger(__name__)


def distribution(state: WalkState) -> PositionDistribution:
    """P(N_t = n) = |a_n|² + |b_n|² nos sítios admissíveis (|n| <= t, n + t par)."""
    sites = state.sites
    probabilities = np.sum(np.abs(state.amplitudes) ** 2, axis=1)
    admissible = (np.abs(sites) <= state.time) & ((sites + state.time) % 2 == 0)
    return PositionDistribution(time=state.time, sites=sites[admissible], probabilities=probabilities[admissible])


def geometric_times(min_exponent: int = 6, max_exponent: int = 13, cap: Optional[int] = None) -> List[int]:
    """Malha 2^min .. 2^max, truncada em `cap`."""
    times = [2 ** e for e in range(min_exponent, max_exponent + 1)]
    if cap is not None:
        times = [t for t in times if t <= cap]
    return times


def return_probability_series(
    schedule: CoinSchedule,
    initial: WalkState,
    horizon: int,
    include_odd: bool = False,
) -> List[Tuple[int, float]]:
    """(t, P(N_t = 0)) para t par <= horizon, numa única passada.

    Em t ímpar a probabilidade é identicamente zero (paridade); `include_odd` as inclui.
    """
    if horizon < 2:
        raise WalkError(f"Horizonte da série de retorno deve ser >= 2, recebido {horizon}")
    series: List[Tuple[int, float]] = []
    for propagator in iter_propagation(initial, schedule, horizon):
        t = propagator.time
        if t % 2 == 0:
            series.append((t, float(propagator.probability_at(0))))
        elif include_odd:
            series.append((t, 0.0))
    return series


def time_averaged_return_probability(series: Sequence[Tuple[int, float]]) -> float:
    """Média temporal de P(N_t = 0) ao longo da série (tende a zero sem localização)."""
    if not series:
        raise WalkError("Série vazia")
    return float(np.mean([p for _, p in series]))


def mean_position(dist: PositionDistribution) -> float:
    return float(np.dot(dist.sites, dist.probabilities))


def std_dev(dist: PositionDistribution) -> float:
    """sqrt(Σ n² p_n - (Σ n p_n)²)."""
    sites = dist.sites.astype(np.float64)
    mean = float(np.dot(sites, dist.probabilities))
    second = float(np.dot(sites * sites, dist.probabilities))
    return math.sqrt(max(0.0, second - mean * mean))


def sigma_series(schedule: CoinSchedule, initial: WalkState, times: Iterable[int]) -> List[Tuple[int, float]]:
    """(t, σ(t)) nos tempos pedidos, numa única evolução."""
    wanted = sorted({int(t) for t in times})
    if not wanted:
        raise WalkError("Nenhum tempo de amostragem informado")
    steps = wanted[-1] - initial.time
    return [(state.time, std_dev(distribution(state))) for state in iter_states(initial, schedule, steps, wanted)]


def scaling_exponent(samples: Sequence[Tuple[float, float]]) -> ScalingFit:
    """Mínimos quadrados de log σ contra log t; o expoente é a inclinação."""
    if len(samples) < 2:
        raise WalkError(f"Ajuste exige pelo menos 2 amostras, recebido {len(samples)}")
    ordered = sorted((float(t), float(sigma)) for t, sigma in samples)
    times = np.array([t for t, _ in ordered])
    sigmas = np.array([sigma for _, sigma in ordered])
    if np.any(times <= 0) or np.any(sigmas <= 0) or not np.all(np.isfinite(sigmas)):
        raise WalkError("Amostras exigem t > 0 e σ > 0")
    if np.any(np.diff(times) <= 0):
        raise WalkError("Tempos de amostragem repetidos")

    log_t, log_sigma = np.log(times), np.log(sigmas)
    slope, intercept = np.polyfit(log_t, log_sigma, 1)
    fitted = slope * log_t + intercept
    ss_res = float(np.sum((log_sigma - fitted) ** 2))
    ss_tot = float(np.sum((log_sigma - log_sigma.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return ScalingFit(
        exponent=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        sample_times=tuple(float(t) for t in times),
    )


def rescaled_moments(dist: PositionDistribution, r_max: int) -> List[float]:
    """E[(N_t/t)^r] para r = 1 .. r_max."""
    if dist.time < 1:
        raise WalkError("Momentos reescalados exigem t >= 1")
    x = dist.sites / dist.time
    return [float(np.dot(x ** r, dist.probabilities)) for r in range(1, r_max + 1)]


def ks_distance(
    dist: PositionDistribution,
    params: LimitDensity,
    settings: LimitServiceSettings = DEFAULT_SETTINGS,
) -> float:
    """sup |F_emp - F| de N_t/t contra a CDF limite.

    F_emp é uma escada contínua à direita; comparar os dois limites laterais em cada degrau
    realiza o supremo sobre todo x.
    """
    if dist.time < 1:
        raise WalkError("Distância KS exige t >= 1")
    limit = cdf_values(dist.sites / dist.time, params, settings)
    right = np.cumsum(dist.probabilities)
    left = right - dist.probabilities
    distance = max(float(np.max(np.abs(right - limit))), float(np.max(np.abs(left - limit))))
    return min(1.0, distance)


def mass_outside(dist: PositionDistribution, threshold_speed: float) -> float:
    """Σ p_n com |n| > threshold_speed · t."""
    if threshold_speed < 0:
        raise WalkError(f"threshold_speed deve ser >= 0, recebido {threshold_speed}")
    outside = np.abs(dist.sites) > threshold_speed * dist.time
    return float(np.sum(dist.probabilities[outside]))
