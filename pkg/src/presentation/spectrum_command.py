from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import typer

from application.dependencies import get_report_service
from infraestructure.artifact_writer import write_spectrum
from presentation.options import FormatOption, domain_errors, io_errors, resolve_output

logger = logging.getLogger(__name__)


def spectrum(
    theta: Optional[float] = typer.Option(None, "--theta", help="θ em radianos (padrão: WALK_THETA1)"),
    grid_size: int = typer.Option(1024, "--grid-size", min=2, help="Número de nós da malha em k"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Arquivo de saída"),
    output_format: FormatOption = typer.Option(FormatOption.csv, "--format", help="csv ou json"),
) -> None:
    """Dispersão, autovalores e velocidades de grupo de M(k) em cada nó."""
    service = get_report_service()
    theta = service.settings.default_theta1 if theta is None else theta
    target = resolve_output(output, f"spectrum.{output_format.value}", service.settings)
    with domain_errors("--theta"):
        spectral = service.spectrum(theta, grid_size)
    with io_errors("gravar o espectro"):
        path = write_spectrum(spectral, target, output_format.value)
    logger.info("Espectro com %d nós gravado em %s", spectral.size, path)
