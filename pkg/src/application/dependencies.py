from __future__ import annotations

import logging
import math
import os
from functools import lru_cache
from pathlib import Path

from application.limit_service import LimitServiceSettings
from application.report_service import ReportServiceSettings, WalkReportService
from application.walk_service import DEFAULT_THETA1, DEFAULT_THETA2
from domain.models import Ordering

logger = logging.getLogger(__name__)


def _parse_float(value: str, default: float) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        return default


def _parse_int(value: str, default: int) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        return default


def _parse_angle(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None:
        return default
    value = _parse_float(raw, default)
    if not math.isfinite(value) or not (0.0 < value < math.pi / 2):
        logger.warning("%s=%r fora de (0, π/2); usando %.6g", name, raw, default)
        return default
    return value


def _parse_ordering(value: str) -> Ordering:
    value = (value or "").strip().lower()
    return "reversed" if value == "reversed" else "standard"


def get_log_level() -> int:
    name = os.getenv("WALK_LOG_LEVEL", "WARNING").strip().upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.WARNING


@lru_cache
def get_limit_settings() -> LimitServiceSettings:
    return LimitServiceSettings(
        panels=max(1, _parse_int(os.getenv("WALK_QUADRATURE_PANELS", "2048"), 2048)),
        order=max(1, _parse_int(os.getenv("WALK_QUADRATURE_ORDER", "5"), 5)),
    )


@lru_cache
def get_report_settings() -> ReportServiceSettings:
    project_root = Path(__file__).resolve().parent.parent
    default_artifacts = project_root / "data" / "artifacts"

    return ReportServiceSettings(
        artifacts_dir=os.getenv("WALK_ARTIFACTS_DIR", str(default_artifacts)),
        default_theta1=_parse_angle("WALK_THETA1", DEFAULT_THETA1),
        default_theta2=_parse_angle("WALK_THETA2", DEFAULT_THETA2),
        ordering=_parse_ordering(os.getenv("WALK_ORDERING", "standard")),
        limit_settings=get_limit_settings(),
    )


@lru_cache
def get_report_service() -> WalkReportService:
    return WalkReportService(get_report_settings())
