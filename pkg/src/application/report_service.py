from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from application.diagnostics_service import (
    distribution,
    geometric_times,
    ks_distance,
    mass_outside,
    mean_position,
    rescaled_moments,
    scaling_exponent,
    sigma_series,
    std_dev,
)
from application.fourier_service import eigensystem, evolve_fourier
from application.limit_service import (
    DEFAULT_SETTINGS,
    LimitServiceSettings,
    c0_from_mean,
    cdf_values,
    moment,
    weighted_density,
)
from application.walk_service import (
    DEFAULT_THETA1,
    DEFAULT_THETA2,
    alternating_schedule,
    constant_schedule,
    fibonacci_schedule,
    initial_state,
    iter_states,
)
from domain.errors import InfeasibleParameterError
from domain.models import (
    CoinAngle,
    CoinSchedule,
    LimitDensity,
    MomentumGrid,
    Ordering,
    PositionDistribution,
    ScalingFit,
    SpectralData,
)
from domain.run_config import RunConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReportServiceSettings:
    artifacts_dir: str
    default_theta1: float = DEFAULT_THETA1
    default_theta2: float = DEFAULT_THETA2
    ordering: Ordering = "standard"
    checkpoint_min_exponent: int = 6
    checkpoint_max_exponent: int = 13
    compare_r_max: int = 4
    support_margin: float = 0.05
    limit_settings: LimitServiceSettings = DEFAULT_SETTINGS


@dataclass(frozen=True)
class SimulationResult:
    schedule: CoinSchedule
    final: PositionDistribution
    checkpoints: List[PositionDistribution]

    @property
    def distributions(self) -> List[PositionDistribution]:
        """Checkpoints seguidos do instante final, sem repetição."""
        earlier = [d for d in self.checkpoints if d.time < self.final.time]
        return earlier + [self.final]


@dataclass(frozen=True, eq=False)
class LimitTable:
    params: LimitDensity
    x: NDArray[np.float64]
    density: NDArray[np.float64]
    cdf: NDArray[np.float64]
    moments: List[Tuple[int, float]]


@dataclass(frozen=True)
class ExponentResult:
    samples: List[Tuple[float, float]]
    fit: ScalingFit
    schedule: Optional[CoinSchedule] = None


class WalkReportService:
    """Orquestra as execuções da linha de comando sobre os serviços numéricos."""

    def __init__(self, settings: ReportServiceSettings) -> None:
        self._settings = settings

    @property
    def settings(self) -> ReportServiceSettings:
        return self._settings

    def build_schedule(self, config: RunConfig, horizon: Optional[int] = None) -> CoinSchedule:
        horizon = config.steps if horizon is None else horizon
        theta2 = config.theta2 if config.theta2 is not None else config.theta1
        if config.schedule == "constant":
            return constant_schedule(config.theta1, horizon)
        if config.schedule == "alternating":
            return alternating_schedule(config.theta1, theta2, horizon)
        return fibonacci_schedule(config.theta1, theta2, horizon, config.ordering)

    def simulate(self, config: RunConfig) -> SimulationResult:
        schedule = self.build_schedule(config)
        alpha, beta = config.amplitudes()
        start = initial_state(alpha, beta, capacity=config.steps)
        times = {config.steps}
        if config.checkpoints:
            times.update(
                geometric_times(
                    self._settings.checkpoint_min_exponent,
                    self._settings.checkpoint_max_exponent,
                    cap=config.steps,
                )
            )
        logger.info("Simulando %s por %d passos", schedule.kind, config.steps)
        distributions = [distribution(state) for state in iter_states(start, schedule, config.steps, times)]
        return SimulationResult(schedule=schedule, final=distributions[-1], checkpoints=distributions[:-1])

    def spectrum(self, theta: float, grid_size: int) -> SpectralData:
        return eigensystem(MomentumGrid(grid_size), CoinAngle(theta))

    def limit_table(self, a: float, c0: float, r_max: int, points: int) -> LimitTable:
        params = LimitDensity(a=a, c0=c0)
        limit_settings = self._settings.limit_settings
        x = np.linspace(-params.a, params.a, points)
        return LimitTable(
            params=params,
            x=x,
            density=np.asarray(weighted_density(x, params), dtype=np.float64),
            cdf=cdf_values(x, params, limit_settings),
            moments=[(r, moment(r, params, limit_settings)) for r in range(0, r_max + 1)],
        )

    def compare(self, config: RunConfig) -> Dict[str, Any]:
        """Executa a caminhada e confronta N_t/t com a lei limite (c0 ajustado pela média)."""
        simulation = self.simulate(config.model_copy(update={"checkpoints": False}))
        dist = simulation.final
        schedule = simulation.schedule
        limit_settings = self._settings.limit_settings
        # a lei limite é enunciada para um único θ; usamos θ1
        a = schedule.theta1.cos
        mean = mean_position(dist) / dist.time
        try:
            c0 = c0_from_mean(mean, a)
            feasible = True
        except InfeasibleParameterError:
            logger.warning("Média %.6g incompatível com a família limite (a = %.6g); usando c0 = 0", mean, a)
            c0, feasible = 0.0, False
        params = LimitDensity(a=a, c0=c0)

        empirical = rescaled_moments(dist, self._settings.compare_r_max)
        moments: List[Dict[str, Any]] = []
        for r, observed in enumerate(empirical, start=1):
            expected = moment(r, params, limit_settings)
            absolute = abs(observed - expected)
            moments.append(
                {
                    "r": r,
                    "empirical": observed,
                    "limit": expected,
                    "absolute_error": absolute,
                    "relative_error": absolute / abs(expected) if abs(expected) > 1e-12 else None,
                }
            )

        alpha, beta = config.amplitudes()
        grid = MomentumGrid(config.effective_grid_size)
        spectral = evolve_fourier(alpha, beta, schedule, config.steps, grid)
        fourier_gap = float(np.max(np.abs(spectral.probabilities - dist.probabilities)))

        threshold = a + self._settings.support_margin
        return {
            "config": config.model_dump(mode="json"),
            "schedule": self.describe_schedule(schedule, config.steps),
            "time": dist.time,
            "limit": {"a": a, "c0": c0, "c0_feasible": feasible},
            "mean": mean,
            "std_dev": std_dev(dist),
            "moments": moments,
            "ks_distance": ks_distance(dist, params, limit_settings),
            "mass_outside": {"threshold_speed": threshold, "mass": mass_outside(dist, threshold)},
            "fourier_check": {"grid_size": grid.size, "max_abs_difference": fourier_gap},
        }

    def exponent(self, config: RunConfig, min_exponent: int, max_exponent: int) -> ExponentResult:
        times = geometric_times(min_exponent, max_exponent, cap=config.steps)
        schedule = self.build_schedule(config, horizon=max(times))
        alpha, beta = config.amplitudes()
        start = initial_state(alpha, beta, capacity=max(times))
        samples = [(float(t), sigma) for t, sigma in sigma_series(schedule, start, times)]
        return ExponentResult(samples=samples, fit=scaling_exponent(samples), schedule=schedule)

    def exponent_from_samples(self, samples: Sequence[Tuple[float, float]]) -> ExponentResult:
        ordered = sorted((float(t), float(sigma)) for t, sigma in samples)
        return ExponentResult(samples=ordered, fit=scaling_exponent(ordered))

    @staticmethod
    def describe_schedule(schedule: CoinSchedule, steps: int) -> Dict[str, Any]:
        return {
            "kind": schedule.kind,
            "theta1": schedule.theta1.theta,
            "theta2": schedule.theta2.theta,
            "ordering": schedule.ordering,
            "word_prefix_length": min(steps, schedule.horizon),
            "word_prefix_sha256": schedule.digest(steps),
        }
