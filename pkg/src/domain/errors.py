from __future__ import annotations

from typing import Optional


class WalkError(ValueError):
    """Erro base do simulador (parâmetros ou estados inválidos)."""


class InvalidAngleError(WalkError):
    pass


class NormalizationError(WalkError):
    def __init__(self, message: str, norm: Optional[float] = None) -> None:
        super().__init__(message)
        self.norm = norm


class ScheduleError(WalkError):
    pass


class GridError(WalkError):
    def __init__(self, message: str, minimum_size: Optional[int] = None) -> None:
        super().__init__(message)
        self.minimum_size = minimum_size


class DistributionError(WalkError):
    pass


class InfeasibleParameterError(WalkError):
    """Parâmetros da densidade limite fora da família (densidade negativa)."""


class NumericalError(WalkError):
    def __init__(self, message: str, node_index: Optional[int] = None) -> None:
        super().__init__(message)
        self.node_index = node_index
