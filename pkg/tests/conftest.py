from __future__ import annotations

import math

import pytest

from application import dependencies
from application.report_service import ReportServiceSettings, WalkReportService
from application.walk_service import initial_state

SQRT_HALF = 1.0 / math.sqrt(2.0)


@pytest.fixture(autouse=True)
def _clean_settings(monkeypatch, tmp_path):
    """Cada teste começa sem variáveis WALK_* e com caches de configuração vazios."""
    for name in (
        "WALK_THETA1",
        "WALK_THETA2",
        "WALK_ORDERING",
        "WALK_QUADRATURE_PANELS",
        "WALK_QUADRATURE_ORDER",
        "WALK_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("WALK_ARTIFACTS_DIR", str(tmp_path / "artifacts"))
    dependencies.get_limit_settings.cache_clear()
    dependencies.get_report_settings.cache_clear()
    dependencies.get_report_service.cache_clear()
    yield
    dependencies.get_limit_settings.cache_clear()
    dependencies.get_report_settings.cache_clear()
    dependencies.get_report_service.cache_clear()


@pytest.fixture
def symmetric_state():
    return lambda capacity=0: initial_state(complex(SQRT_HALF, 0.0), complex(0.0, SQRT_HALF), capacity)


@pytest.fixture
def report_service(tmp_path):
    return WalkReportService(ReportServiceSettings(artifacts_dir=str(tmp_path / "artifacts")))
