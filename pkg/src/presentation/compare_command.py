from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import typer

from application.dependencies import get_report_service
from infraestructure.artifact_writer import write_json
from presentation.options import (
    DEFAULT_INITIAL,
    FormatOption,
    OrderingOption,
    ScheduleOption,
    build_run_config,
    domain_errors,
    io_errors,
    resolve_output,
)

logger = logging.getLogger(__name__)


def compare(
    schedule: ScheduleOption = typer.Option(ScheduleOption.constant, "--schedule", help="Agenda de moedas"),
    theta1: Optional[float] = typer.Option(None, "--theta1", help="θ1 em radianos (padrão: WALK_THETA1)"),
    theta2: Optional[float] = typer.Option(None, "--theta2", help="θ2 em radianos (padrão: WALK_THETA2)"),
    ordering: Optional[OrderingOption] = typer.Option(None, "--ordering", help="Ordenação da palavra de Fibonacci"),
    steps: int = typer.Option(2000, "--steps", min=1, help="Número de passos"),
    initial: str = typer.Option(DEFAULT_INITIAL, "--initial", help="re(α),im(α),re(β),im(β)"),
    grid_size: Optional[int] = typer.Option(
        None, "--grid-size", min=2, help="Malha da checagem em Fourier (padrão: 2·steps + 2)"
    ),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Relatório JSON"),
) -> None:
    """Compara N_t/t com a lei limite: momentos, distância KS e massa fora do suporte."""
    service = get_report_service()
    config = build_run_config(
        service.settings,
        schedule=schedule,
        theta1=theta1,
        theta2=theta2,
        ordering=ordering,
        initial=initial,
        steps=steps,
        output=resolve_output(output, "compare.json", service.settings),
        output_format=FormatOption.json,
        grid_size=grid_size,
    )
    with domain_errors():
        report = service.compare(config)
    with io_errors("gravar o relatório"):
        path = write_json(report, config.output)
    logger.info("Relatório (KS = %.4g) gravado em %s", report["ks_distance"], path)
