from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import typer

from application.dependencies import get_report_service
from infraestructure.artifact_writer import write_distributions
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


def simulate(
    schedule: ScheduleOption = typer.Option(ScheduleOption.constant, "--schedule", help="Agenda de moedas"),
    theta1: Optional[float] = typer.Option(None, "--theta1", help="θ1 em radianos (padrão: WALK_THETA1)"),
    theta2: Optional[float] = typer.Option(None, "--theta2", help="θ2 em radianos (padrão: WALK_THETA2)"),
    ordering: Optional[OrderingOption] = typer.Option(None, "--ordering", help="Ordenação da palavra de Fibonacci"),
    steps: int = typer.Option(..., "--steps", min=1, help="Número de passos"),
    initial: str = typer.Option(DEFAULT_INITIAL, "--initial", help="re(α),im(α),re(β),im(β)"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Arquivo de saída"),
    output_format: FormatOption = typer.Option(FormatOption.csv, "--format", help="csv ou json"),
    checkpoints: bool = typer.Option(False, "--checkpoints", help="Inclui os instantes 2^6..2^13 (limitados por --steps)"),
) -> None:
    """Distribuição de posição no instante final (colunas t, n, probability)."""
    service = get_report_service()
    default_name = f"distribution.{output_format.value}"
    config = build_run_config(
        service.settings,
        schedule=schedule,
        theta1=theta1,
        theta2=theta2,
        ordering=ordering,
        initial=initial,
        steps=steps,
        output=resolve_output(output, default_name, service.settings),
        output_format=output_format,
        checkpoints=checkpoints,
    )
    with domain_errors():
        result = service.simulate(config)
    with io_errors("gravar a distribuição"):
        path = write_distributions(result.distributions, config.output, config.output_format)
    logger.info("Distribuição em t = %d gravada em %s", result.final.time, path)
