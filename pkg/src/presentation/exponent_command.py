from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import typer

from application.dependencies import get_report_service
from infraestructure.artifact_writer import write_exponent
from infraestructure.distribution_repository import load_sigma_samples
from presentation.options import (
    DEFAULT_INITIAL,
    OrderingOption,
    ScheduleOption,
    build_run_config,
    domain_errors,
    io_errors,
    resolve_output,
)

logger = logging.getLogger(__name__)


def exponent(
    schedule: ScheduleOption = typer.Option(ScheduleOption.fibonacci, "--schedule", help="Agenda de moedas"),
    theta1: Optional[float] = typer.Option(None, "--theta1", help="θ1 em radianos (padrão: WALK_THETA1)"),
    theta2: Optional[float] = typer.Option(None, "--theta2", help="θ2 em radianos (padrão: WALK_THETA2)"),
    ordering: Optional[OrderingOption] = typer.Option(None, "--ordering", help="Ordenação da palavra de Fibonacci"),
    initial: str = typer.Option(DEFAULT_INITIAL, "--initial", help="re(α),im(α),re(β),im(β)"),
    min_exponent: int = typer.Option(6, "--min-exp", min=0, help="Primeiro tempo 2^min"),
    max_exponent: int = typer.Option(13, "--max-exp", min=1, max=20, help="Último tempo 2^max"),
    input_path: Optional[Path] = typer.Option(None, "--input", help="CSV (t, sigma) já calculado"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="CSV (t, sigma); o ajuste vai em <stem>.fit.json"),
) -> None:
    """Ajusta σ(t) ~ t^c em log-log."""
    service = get_report_service()
    target = resolve_output(output, "exponent.csv", service.settings)
    if input_path is not None:
        with domain_errors("--input"), io_errors("ler as amostras"):
            samples = load_sigma_samples(input_path)
            result = service.exponent_from_samples(samples)
    else:
        if max_exponent <= min_exponent:
            raise typer.BadParameter("o ajuste exige pelo menos 2 tempos (--max-exp > --min-exp)", param_hint="--max-exp")
        config = build_run_config(
            service.settings,
            schedule=schedule,
            theta1=theta1,
            theta2=theta2,
            ordering=ordering,
            initial=initial,
            steps=2 ** max_exponent,
            output=target,
        )
        with domain_errors():
            result = service.exponent(config, min_exponent, max_exponent)
    with io_errors("gravar o ajuste"):
        path = write_exponent(result, target)
    logger.info("Expoente %.4f (r² = %.4f) gravado em %s", result.fit.exponent, result.fit.r_squared, path)
