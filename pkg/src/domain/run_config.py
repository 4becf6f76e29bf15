from __future__ import annotations

import math
from pathlib import Path
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Tolerância dos flags; o estado é renormalizado exatamente antes da evolução
INITIAL_NORM_TOLERANCE = 1e-9


class RunConfig(BaseModel):
    """Configuração de uma execução da linha de comando (ecoada nos relatórios)."""

    model_config = ConfigDict(frozen=True)

    schedule: Literal["constant", "alternating", "fibonacci"] = "constant"
    theta1: float
    theta2: Optional[float] = None
    ordering: Literal["standard", "reversed"] = "standard"
    initial: Tuple[float, float, float, float]
    steps: int = Field(ge=1)
    grid_size: Optional[int] = Field(default=None, ge=2)
    output: Path
    output_format: Literal["csv", "json"] = "csv"
    checkpoints: bool = False

    @field_validator("theta1", "theta2")
    @classmethod
    def _angle_in_range(cls, value: Optional[float]) -> Optional[float]:
        if value is None:
            return value
        if not math.isfinite(value) or not (0.0 < value < math.pi / 2):
            raise ValueError(f"ângulo deve estar em (0, π/2) radianos, recebido {value}")
        return value

    @field_validator("initial")
    @classmethod
    def _normalized(cls, value: Tuple[float, float, float, float]) -> Tuple[float, float, float, float]:
        norm = sum(component * component for component in value)
        if abs(norm - 1.0) > INITIAL_NORM_TOLERANCE:
            raise ValueError(f"|alpha|² + |beta|² = {norm:.12g}, esperado 1")
        return value

    @model_validator(mode="after")
    def _second_angle(self) -> "RunConfig":
        if self.schedule != "constant" and self.theta2 is None:
            raise ValueError("agendas alternating/fibonacci exigem theta2")
        return self

    def amplitudes(self) -> Tuple[complex, complex]:
        re_a, im_a, re_b, im_b = self.initial
        norm = math.sqrt(re_a * re_a + im_a * im_a + re_b * re_b + im_b * im_b)
        return complex(re_a, im_a) / norm, complex(re_b, im_b) / norm

    @property
    def effective_grid_size(self) -> int:
        return self.grid_size if self.grid_size is not None else 2 * self.steps + 2
