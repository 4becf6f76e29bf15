from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Optional

import typer

from application.dependencies import get_report_service
from infraestructure.artifact_writer import write_limit_table
from presentation.options import FormatOption, domain_errors, io_errors, resolve_output

logger = logging.getLogger(__name__)


def limit(
    a: float = typer.Option(..., "--a", help="Meia largura do suporte, em (0, 1)"),
    c0: float = typer.Option(0.0, "--c0", help="Coeficiente de assimetria, |c0| <= 1/a"),
    r_max: int = typer.Option(4, "--r-max", min=0, help="Maior ordem de momento"),
    points: int = typer.Option(401, "--points", min=2, help="Pontos da malha uniforme em x"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Arquivo de saída"),
    output_format: FormatOption = typer.Option(FormatOption.csv, "--format", help="csv ou json"),
) -> None:
    """Densidade limite, CDF e momentos 0..r_max."""
    if not math.isfinite(a) or not (0.0 < a < 1.0):
        raise typer.BadParameter(f"deve estar em (0, 1), recebido {a}", param_hint="--a")
    service = get_report_service()
    target = resolve_output(output, f"limit.{output_format.value}", service.settings)
    with domain_errors("--c0"):
        table = service.limit_table(a, c0, r_max, points)
    with io_errors("gravar a tabela da lei limite"):
        path = write_limit_table(table, target, output_format.value)
    logger.info("Lei limite (a = %.6g, c0 = %.6g) gravada em %s", a, c0, path)
