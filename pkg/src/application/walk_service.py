from __future__ import annotations

import logging
import math
from typing import Iterable, Iterator, List, Optional, Union

import numpy as np
from numpy.typing import NDArray

from domain.errors import NormalizationError, ScheduleError, WalkError
from domain.models import CoinAngle, CoinSchedule, Ordering, WalkState

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-12

# Par de ângulos padrão das execuções Fibonacci (configurável via WALK_THETA1/WALK_THETA2)
DEFAULT_THETA1 = math.pi / 3
DEFAULT_THETA2 = math.pi / 6
DEFAULT_ALPHA = complex(1.0 / math.sqrt(2.0), 0.0)
DEFAULT_BETA = complex(0.0, 1.0 / math.sqrt(2.0))

AngleLike = Union[CoinAngle, float]


def as_angle(theta: AngleLike) -> CoinAngle:
    return theta if isinstance(theta, CoinAngle) else CoinAngle(theta)


def coin_matrix(theta: AngleLike) -> NDArray[np.complex128]:
    """Moeda lida diretamente das recorrências: [[cos θ, sin θ], [sin θ, -cos θ]].

    Real, simétrica e ortogonal (é a própria inversa).
    """
    angle = as_angle(theta)
    c, s = angle.cos, angle.sin
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def initial_state(alpha: complex, beta: complex, capacity: int = 0) -> WalkState:
    """Estado no tempo 0 com amplitude (alpha, beta) em n = 0.

    `capacity` pré-aloca a janela [-capacity, capacity] para evoluções longas.
    """
    if capacity < 0:
        raise WalkError(f"capacity deve ser >= 0, recebido {capacity}")
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise NormalizationError(f"Estado inicial não normalizado: |alpha|² + |beta|² = {norm:.17g}", norm=norm)
    amplitudes = np.zeros((2 * capacity + 1, 2), dtype=np.complex128)
    amplitudes[capacity] = (alpha, beta)
    return WalkState(time=0, origin_offset=capacity, amplitudes=amplitudes)


class WalkPropagator:
    """Avança as amplitudes in-place em buffers pré-alocados.

    Mantém o suporte ativo [lo, hi) para que cada passo custe O(t). É de uso exclusivo
    de uma evolução; `snapshot()` devolve cópias imutáveis.
    """

    def __init__(self, initial: WalkState, horizon: int) -> None:
        if horizon < 0:
            raise WalkError(f"Horizonte negativo: {horizon}")
        nonzero = np.flatnonzero(np.any(initial.amplitudes != 0, axis=1))
        if nonzero.size:
            lo, hi = int(nonzero[0]), int(nonzero[-1]) + 1
        else:
            lo, hi = initial.origin_offset, initial.origin_offset + 1
        # margem de um sítio por passo em cada lado
        left_pad = max(0, horizon + 1 - lo)
        right_pad = max(0, hi + horizon + 1 - initial.window_size)
        amplitudes = np.pad(initial.amplitudes, ((left_pad, right_pad), (0, 0)))
        self._a = np.ascontiguousarray(amplitudes[:, 0])
        self._b = np.ascontiguousarray(amplitudes[:, 1])
        self._offset = initial.origin_offset + left_pad
        self._lo = lo + left_pad
        self._hi = hi + left_pad
        self._limit = initial.time + horizon
        self.time = initial.time

    def advance(self, theta: float) -> None:
        """Um passo: a_n <- a_{n+1}cos θ + b_{n+1}sin θ ; b_n <- a_{n-1}sin θ - b_{n-1}cos θ."""
        if self.time >= self._limit:
            raise WalkError(f"Propagador pré-alocado até t = {self._limit}")
        c, s = math.cos(theta), math.sin(theta)
        lo, hi = self._lo, self._hi
        a, b = self._a, self._b
        new_a = c * a[lo:hi] + s * b[lo:hi]
        new_b = s * a[lo:hi] - c * b[lo:hi]
        a[lo - 1:hi + 1] = 0.0
        b[lo - 1:hi + 1] = 0.0
        a[lo - 1:hi - 1] = new_a
        b[lo + 1:hi + 1] = new_b
        self._lo, self._hi = lo - 1, hi + 1
        self.time += 1

    def probability_at(self, n: int) -> float:
        index = n + self._offset
        if not (0 <= index < self._a.shape[0]):
            return 0.0
        return abs(self._a[index]) ** 2 + abs(self._b[index]) ** 2

    def snapshot(self) -> WalkState:
        return WalkState(
            time=self.time,
            origin_offset=self._offset,
            amplitudes=np.column_stack((self._a, self._b)),
        )


def step(state: WalkState, theta: AngleLike) -> WalkState:
    """Um passo da caminhada com ângulo fixo; a janela cresce se necessário."""
    propagator = WalkPropagator(state, 1)
    propagator.advance(as_angle(theta).theta)
    return propagator.snapshot()


def adjoint_step(state: WalkState, theta: AngleLike) -> WalkState:
    """Desfaz `step`: a_m = a'_{m-1}cos θ + b'_{m+1}sin θ ; b_m = a'_{m-1}sin θ - b'_{m+1}cos θ."""
    if state.time < 1:
        raise WalkError("Não há passo anterior a t = 0")
    angle = as_angle(theta)
    c, s = angle.cos, angle.sin
    amplitudes = np.pad(state.amplitudes, ((1, 1), (0, 0)))
    a_prev = np.roll(amplitudes[:, 0], 1)
    b_next = np.roll(amplitudes[:, 1], -1)
    restored = np.column_stack((c * a_prev + s * b_next, s * a_prev - c * b_next))
    return WalkState(time=state.time - 1, origin_offset=state.origin_offset, amplitudes=restored[1:-1])


def fibonacci_blocks(count: int, ordering: Ordering = "standard") -> List[str]:
    """Blocos s_1 .. s_count com s_1 = "1", s_2 = "2".

    standard: s_{k+1} = s_{k-1} + s_k (U_{k+1} = U_k U_{k-1} aplica U_{k-1} primeiro)
    reversed: s_{k+1} = s_k + s_{k-1}
    """
    if count < 1:
        raise ScheduleError(f"count deve ser >= 1, recebido {count}")
    blocks = ["1", "2"]
    while len(blocks) < count:
        older, newer = blocks[-2], blocks[-1]
        blocks.append(older + newer if ordering == "standard" else newer + older)
    return blocks[:count]


def fibonacci_word(horizon: int, ordering: Ordering = "standard") -> str:
    """Prefixo de comprimento `horizon` da palavra de Fibonacci infinita.

    Na ordenação standard só os blocos de índice ímpar são prefixos uns dos outros
    (s_1, s_3, s_5, ...), então a palavra infinita é o limite deles. Na reversed,
    todos os blocos a partir de s_2 são prefixos do seguinte.
    """
    if horizon < 1:
        raise ScheduleError(f"Horizonte da palavra de Fibonacci deve ser >= 1, recebido {horizon}")
    if ordering not in ("standard", "reversed"):
        raise ScheduleError(f"Ordenação desconhecida: {ordering!r}")

    def eligible(index: int) -> bool:
        return index % 2 == 1 if ordering == "standard" else index >= 2

    if ordering == "standard" and horizon == 1:
        return "1"
    older, newer, index = "1", "2", 2
    while not (eligible(index) and len(newer) >= horizon):
        older, newer = newer, (older + newer if ordering == "standard" else newer + older)
        index += 1
    return newer[:horizon]


def constant_schedule(theta: AngleLike, horizon: int) -> CoinSchedule:
    angle = as_angle(theta)
    if horizon < 1:
        raise ScheduleError(f"Horizonte da agenda deve ser >= 1, recebido {horizon}")
    return CoinSchedule(kind="constant", theta1=angle, theta2=angle, word="1" * horizon)


def alternating_schedule(theta1: AngleLike, theta2: AngleLike, horizon: int) -> CoinSchedule:
    if horizon < 1:
        raise ScheduleError(f"Horizonte da agenda deve ser >= 1, recebido {horizon}")
    word = ("12" * ((horizon + 1) // 2))[:horizon]
    return CoinSchedule(kind="alternating", theta1=as_angle(theta1), theta2=as_angle(theta2), word=word)


def fibonacci_schedule(
    theta1: AngleLike = DEFAULT_THETA1,
    theta2: AngleLike = DEFAULT_THETA2,
    horizon: int = 1,
    ordering: Ordering = "standard",
) -> CoinSchedule:
    return CoinSchedule(
        kind="fibonacci",
        theta1=as_angle(theta1),
        theta2=as_angle(theta2),
        word=fibonacci_word(horizon, ordering),
        ordering=ordering,
    )


def evolve(initial: WalkState, schedule: CoinSchedule, steps: int) -> WalkState:
    """Aplica `steps` passos com o ângulo da agenda em cada instante (sem renormalização)."""
    if steps < 0:
        raise WalkError(f"steps deve ser >= 0, recebido {steps}")
    angles = schedule.angles(steps, start=initial.time)
    logger.debug("Evoluindo %d passos (agenda %s) a partir de t = %d", steps, schedule.kind, initial.time)
    propagator = WalkPropagator(initial, steps)
    for theta in angles:
        propagator.advance(float(theta))
    return propagator.snapshot()


def iter_states(
    initial: WalkState,
    schedule: CoinSchedule,
    steps: int,
    times: Optional[Iterable[int]] = None,
) -> Iterator[WalkState]:
    """Uma única passada de evolução, emitindo cópias do estado nos tempos pedidos.

    Sem `times`, emite o estado após cada passo (e o inicial).
    """
    angles = schedule.angles(steps, start=initial.time)
    wanted = None if times is None else {int(t) for t in times}
    propagator = WalkPropagator(initial, steps)
    if wanted is None or propagator.time in wanted:
        yield propagator.snapshot()
    for theta in angles:
        propagator.advance(float(theta))
        if wanted is None or propagator.time in wanted:
            yield propagator.snapshot()


def iter_propagation(initial: WalkState, schedule: CoinSchedule, steps: int) -> Iterator[WalkPropagator]:
    """Como `iter_states`, mas expõe o propagador (sem cópias) a cada instante."""
    angles = schedule.angles(steps, start=initial.time)
    propagator = WalkPropagator(initial, steps)
    yield propagator
    for theta in angles:
        propagator.advance(float(theta))
        yield propagator
