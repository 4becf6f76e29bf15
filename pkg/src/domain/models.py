from __future__ import annotations

import cmath
import hashlib
import math
from dataclasses import dataclass
from typing import Dict, Literal, Mapping, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from domain.errors import (
    DistributionError,
    GridError,
    InfeasibleParameterError,
    InvalidAngleError,
    ScheduleError,
    WalkError,
)

ScheduleKind = Literal["constant", "alternating", "fibonacci"]
Ordering = Literal["standard", "reversed"]

DISTRIBUTION_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ChiralPair:
    """Amplitudes de um sítio: `left` guarda a_n(t), `right` guarda b_n(t)."""

    left: complex
    right: complex

    def __post_init__(self) -> None:
        if not (cmath.isfinite(self.left) and cmath.isfinite(self.right)):
            raise WalkError(f"Amplitude não finita: ({self.left}, {self.right})")

    @property
    def probability(self) -> float:
        return abs(self.left) ** 2 + abs(self.right) ** 2


@dataclass(frozen=True)
class CoinAngle:
    """Ângulo da moeda em radianos, restrito ao intervalo aberto (0, π/2)."""

    theta: float

    def __post_init__(self) -> None:
        theta = float(self.theta)
        if not math.isfinite(theta) or not (0.0 < theta < math.pi / 2):
            raise InvalidAngleError(f"Ângulo da moeda deve estar em (0, π/2) radianos, recebido {self.theta!r}")
        object.__setattr__(self, "theta", theta)

    @property
    def cos(self) -> float:
        return math.cos(self.theta)

    @property
    def sin(self) -> float:
        return math.sin(self.theta)


@dataclass(frozen=True, eq=False)
class WalkState:
    """Estado completo do caminhante numa janela densa de posições.

    - amplitudes: array (L, 2) complexo; coluna 0 = a_n (esquerda), coluna 1 = b_n (direita)
    - origin_offset: índice do array que corresponde a n = 0
    """

    time: int
    origin_offset: int
    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        if self.time < 0:
            raise WalkError(f"Tempo negativo: {self.time}")
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        if amplitudes.ndim != 2 or amplitudes.shape[1] != 2:
            raise WalkError(f"Amplitudes devem ter formato (L, 2), recebido {amplitudes.shape}")
        if not (0 <= self.origin_offset < amplitudes.shape[0]):
            raise WalkError(f"origin_offset {self.origin_offset} fora da janela de {amplitudes.shape[0]} sítios")
        if not np.all(np.isfinite(amplitudes)):
            raise WalkError("Estado contém amplitudes NaN/Inf")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def window_size(self) -> int:
        return int(self.amplitudes.shape[0])

    @property
    def sites(self) -> NDArray[np.int64]:
        return np.arange(self.window_size, dtype=np.int64) - self.origin_offset

    def pair(self, n: int) -> ChiralPair:
        index = n + self.origin_offset
        if not (0 <= index < self.window_size):
            return ChiralPair(0j, 0j)
        left, right = self.amplitudes[index]
        return ChiralPair(complex(left), complex(right))

    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class CoinSchedule:
    """Sequência temporal de ângulos: palavra sobre {1, 2} já materializada.

    A letra "1" usa theta1 e a letra "2" usa theta2 (para `constant`, theta2 = theta1).
    """

    kind: ScheduleKind
    theta1: CoinAngle
    theta2: CoinAngle
    word: str
    ordering: Ordering = "standard"

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "alternating", "fibonacci"):
            raise ScheduleError(f"Tipo de agenda desconhecido: {self.kind!r}")
        if self.ordering not in ("standard", "reversed"):
            raise ScheduleError(f"Ordenação desconhecida: {self.ordering!r}")
        if not self.word or set(self.word) - {"1", "2"}:
            raise ScheduleError("A palavra da agenda deve ser não vazia e conter apenas '1' e '2'")
        if self.kind == "constant" and self.theta1 != self.theta2:
            raise ScheduleError("Agenda constante exige theta1 == theta2")

    @property
    def horizon(self) -> int:
        return len(self.word)

    def angles(self, steps: int, start: int = 0) -> NDArray[np.float64]:
        """Ângulos θ_s para s = start .. start+steps-1."""
        if start < 0 or steps < 0:
            raise ScheduleError(f"Intervalo inválido: start={start}, steps={steps}")
        if start + steps > self.horizon:
            raise ScheduleError(
                f"Agenda cobre {self.horizon} passos, mas a evolução pede {start + steps}"
            )
        letters = np.frombuffer(self.word[start:start + steps].encode("ascii"), dtype=np.uint8)
        return np.where(letters == ord("1"), self.theta1.theta, self.theta2.theta)

    def digest(self, length: Optional[int] = None) -> str:
        """SHA-256 do prefixo da palavra (proveniência dos artefatos)."""
        prefix = self.word if length is None else self.word[:length]
        return hashlib.sha256(prefix.encode("ascii")).hexdigest()


@dataclass(frozen=True)
class MomentumGrid:
    """Malha uniforme k_j = -π + 2πj/N em [-π, π)."""

    size: int

    def __post_init__(self) -> None:
        if int(self.size) != self.size or self.size < 2:
            raise GridError(f"Malha de momentos exige N >= 2, recebido {self.size}", minimum_size=2)

    @property
    def nodes(self) -> NDArray[np.float64]:
        return -np.pi + 2.0 * np.pi * np.arange(self.size) / self.size

    def supports_horizon(self, steps: int) -> bool:
        return self.size >= 2 * steps + 2


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Espectro de M(k) por nó da malha.

    - eigenvalues: (N, 2), ramo 0 = e^{iw}, ramo 1 = e^{-iw}
    - eigenvectors: (N, 2, 2) indexado por [nó, ramo, componente]
    - group_velocities: (N, 2) com (h1, h2)
    """

    theta: CoinAngle
    nodes: NDArray[np.float64]
    dispersion: NDArray[np.float64]
    eigenvalues: NDArray[np.complex128]
    eigenvectors: NDArray[np.complex128]
    group_velocities: NDArray[np.float64]

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])


@dataclass(frozen=True)
class LimitDensity:
    """Parâmetros da densidade limite ponderada (1 - c0·x)·f_K(x; a)."""

    a: float
    c0: float = 0.0

    def __post_init__(self) -> None:
        a = float(self.a)
        c0 = float(self.c0)
        if not math.isfinite(a) or not (0.0 < a < 1.0):
            raise InfeasibleParameterError(f"Parâmetro de suporte a deve estar em (0, 1), recebido {self.a!r}")
        if not math.isfinite(c0) or abs(c0) * a > 1.0 + 1e-12:
            raise InfeasibleParameterError(
                f"|c0| deve ser <= 1/a = {1.0 / a:.6g} para a densidade ser não negativa, recebido c0={self.c0!r}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c0", c0)

    @classmethod
    def from_angle(cls, theta: CoinAngle, c0: float = 0.0) -> "LimitDensity":
        return cls(a=theta.cos, c0=c0)


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    """P(N_t = n) nos sítios admissíveis (|n| <= t e n + t par), em ordem crescente de n."""

    time: int
    sites: NDArray[np.int64]
    probabilities: NDArray[np.float64]

    def __post_init__(self) -> None:
        sites = np.array(self.sites, dtype=np.int64)
        probabilities = np.array(self.probabilities, dtype=np.float64)
        if self.time < 0:
            raise DistributionError(f"Tempo negativo: {self.time}")
        if sites.ndim != 1 or sites.shape != probabilities.shape or sites.size == 0:
            raise DistributionError("sites e probabilities devem ser vetores não vazios do mesmo tamanho")
        if np.any(np.diff(sites) <= 0):
            raise DistributionError("sites devem estar em ordem estritamente crescente")
        if np.any(probabilities < 0) or not np.all(np.isfinite(probabilities)):
            raise DistributionError("Probabilidades devem ser finitas e não negativas")
        total = float(probabilities.sum())
        if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
            raise DistributionError(f"Probabilidades somam {total:.17g}, esperado 1")
        if np.any(np.abs(sites) > self.time):
            raise DistributionError(f"Sítio fora do suporte |n| <= {self.time}")
        if np.any((sites + self.time) % 2 != 0):
            raise DistributionError(f"Sítio com paridade incompatível com t = {self.time}")
        sites.setflags(write=False)
        probabilities.setflags(write=False)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "probabilities", probabilities)

    @classmethod
    def from_masses(cls, time: int, masses: Mapping[int, float]) -> "PositionDistribution":
        ordered = sorted(masses.items())
        return cls(
            time=time,
            sites=np.array([n for n, _ in ordered], dtype=np.int64),
            probabilities=np.array([p for _, p in ordered], dtype=np.float64),
        )

    @property
    def masses(self) -> Dict[int, float]:
        return {int(n): float(p) for n, p in zip(self.sites, self.probabilities)}

    def probability_at(self, n: int) -> float:
        hit = np.flatnonzero(self.sites == n)
        return float(self.probabilities[hit[0]]) if hit.size else 0.0


@dataclass(frozen=True)
class ScalingFit:
    """Ajuste log-log σ(t) ~ t^c."""

    exponent: float
    intercept: float
    r_squared: float
    sample_times: Tuple[float, ...]

    def __post_init__(self) -> None:
        if not (0.0 <= self.r_squared <= 1.0):
            raise WalkError(f"r² fora de [0, 1]: {self.r_squared}")
        if len(self.sample_times) < 2 or any(b <= a for a, b in zip(self.sample_times, self.sample_times[1:])):
            raise WalkError("sample_times deve ser estritamente crescente com pelo menos 2 pontos")
