from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from application.fourier_service import limit_moment
from application.walk_service import AngleLike, as_angle
from domain.errors import InfeasibleParameterError
from domain.models import LimitDensity, MomentumGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LimitServiceSettings:
    """Regra composta de Gauss-Legendre em u (x = a sin u)."""

    panels: int = 2048
    order: int = 5
    spectral_grid_size: int = 4096


DEFAULT_SETTINGS = LimitServiceSettings()


def _check_support(a: float) -> float:
    a = float(a)
    if not math.isfinite(a) or not (0.0 < a < 1.0):
        raise InfeasibleParameterError(f"Parâmetro de suporte a deve estar em (0, 1), recebido {a!r}")
    return a


@lru_cache(maxsize=8)
def _reference_rule(panels: int, order: int) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nós e pesos da regra composta sobre [0, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    middle = 0.5 * (edges[1:] + edges[:-1])
    points = (middle[:, None] + half[:, None] * nodes[None, :]).ravel()
    scaled = (half[:, None] * weights[None, :]).ravel()
    return points, scaled


def _integrate(
    fn: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    lower: float,
    upper: float,
    settings: LimitServiceSettings,
) -> float:
    if upper <= lower:
        return 0.0
    points, weights = _reference_rule(settings.panels, settings.order)
    width = upper - lower
    return float(np.dot(fn(lower + width * points), weights) * width)


def _substituted_integrand(params: LimitDensity, r: int) -> Callable[[NDArray[np.float64]], NDArray[np.float64]]:
    """x^r (1 - c0 x) f_K(x; a) dx com x = a sin u: a singularidade nas bordas desaparece."""
    a, c0 = params.a, params.c0
    scale = math.sqrt(1.0 - a * a) / math.pi

    def integrand(u: NDArray[np.float64]) -> NDArray[np.float64]:
        x = a * np.sin(u)
        return x ** r * (1.0 - c0 * x) * scale / (1.0 - x * x)

    return integrand


def konno_density(x: ArrayLike, a: float):
    """f_K(x; a) = sqrt(1 - a²) / (π (1 - x²) sqrt(a² - x²)) em (-a, a); zero fora."""
    a = _check_support(a)
    values = np.asarray(x, dtype=np.float64)
    inside = np.abs(values) < a
    safe = np.where(inside, values, 0.0)
    density = math.sqrt(1.0 - a * a) / (math.pi * (1.0 - safe ** 2) * np.sqrt(a * a - safe ** 2))
    result = np.where(inside, density, 0.0)
    return float(result) if result.ndim == 0 else result


def weighted_density(x: ArrayLike, params: LimitDensity):
    """f(x) = (1 - c0 x) · f_K(x; a)."""
    values = np.asarray(x, dtype=np.float64)
    result = (1.0 - params.c0 * values) * konno_density(values, params.a)
    result = np.maximum(result, 0.0)
    return float(result) if np.ndim(result) == 0 else result


def cdf(x: float, params: LimitDensity, settings: LimitServiceSettings = DEFAULT_SETTINGS) -> float:
    """∫_{-a}^{x} f, integrado em u ∈ [-π/2, arcsin(x/a)]."""
    x = float(x)
    if x <= -params.a:
        return 0.0
    upper = math.asin(min(1.0, x / params.a))
    value = _integrate(_substituted_integrand(params, 0), -math.pi / 2, upper, settings)
    return min(1.0, max(0.0, value))


def cdf_values(xs: ArrayLike, params: LimitDensity, settings: LimitServiceSettings = DEFAULT_SETTINGS) -> NDArray[np.float64]:
    return np.array([cdf(x, params, settings) for x in np.asarray(xs, dtype=np.float64).ravel()])


def moment(r: int, params: LimitDensity, settings: LimitServiceSettings = DEFAULT_SETTINGS) -> float:
    """∫_{-a}^{a} x^r f(x) dx."""
    if r < 0:
        raise ValueError(f"Ordem do momento deve ser >= 0, recebido {r}")
    return _integrate(_substituted_integrand(params, r), -math.pi / 2, math.pi / 2, settings)


def second_moment_closed_form(a: float) -> float:
    """∫ x² f_K(x; a) dx = 1 - sqrt(1 - a²) (também o fator que liga c0 à média)."""
    a = _check_support(a)
    return 1.0 - math.sqrt(1.0 - a * a)


def c0_from_mean(empirical_mean: float, a: float) -> float:
    """c0 tal que moment(1) = -c0 (1 - sqrt(1 - a²)) reproduz a média empírica."""
    a = _check_support(a)
    c0 = -float(empirical_mean) / second_moment_closed_form(a)
    if abs(c0) * a > 1.0 + 1e-12:
        raise InfeasibleParameterError(
            f"Média {empirical_mean:.6g} exige c0 = {c0:.6g}, fora de |c0| <= 1/a = {1.0 / a:.6g}"
        )
    return c0


def c0_from_initial_state(
    alpha: complex,
    beta: complex,
    theta: AngleLike,
    settings: LimitServiceSettings = DEFAULT_SETTINGS,
) -> float:
    """c0 a partir do primeiro momento espectral, sem simular (caminhada homogênea)."""
    angle = as_angle(theta)
    mean = limit_moment(1, alpha, beta, angle, MomentumGrid(settings.spectral_grid_size))
    logger.debug("Primeiro momento espectral %.12g (theta = %.6g)", mean, angle.theta)
    return c0_from_mean(mean, angle.cos)


def konno_cdf_closed_form(x: float, a: float) -> float:
    """CDF exata para c0 = 0: 1/2 + arctan(sqrt(1 - a²) tan u)/π, x = a sin u."""
    a = _check_support(a)
    if x <= -a:
        return 0.0
    if x >= a:
        return 1.0
    u = math.asin(x / a)
    return 0.5 + math.atan(math.sqrt(1.0 - a * a) * math.tan(u)) / math.pi


def quantile(p: float, params: LimitDensity, settings: LimitServiceSettings = DEFAULT_SETTINGS, tolerance: float = 1e-12) -> float:
    """Inversa da CDF por bissecção."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"Probabilidade fora de [0, 1]: {p}")
    lower, upper = -params.a, params.a
    while upper - lower > tolerance:
        middle = 0.5 * (lower + upper)
        if cdf(middle, params, settings) < p:
            lower = middle
        else:
            upper = middle
    return 0.5 * (lower + upper)
