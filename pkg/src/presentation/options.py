from __future__ import annotations

import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional, Tuple

import typer
from pydantic import ValidationError

from application.report_service import ReportServiceSettings
from domain.errors import NumericalError, WalkError
from domain.run_config import RunConfig

logger = logging.getLogger(__name__)

# (1/√2, i/√2): distribuição simétrica
DEFAULT_INITIAL = "0.7071067811865476,0,0,0.7071067811865476"

EXIT_IO_ERROR = 3
EXIT_NUMERICAL_ERROR = 4

FLAG_NAMES = {
    "schedule": "--schedule",
    "theta1": "--theta1",
    "theta2": "--theta2",
    "ordering": "--ordering",
    "initial": "--initial",
    "steps": "--steps",
    "grid_size": "--grid-size",
    "output": "--output",
    "output_format": "--format",
    "checkpoints": "--checkpoints",
}


class ScheduleOption(str, Enum):
    constant = "constant"
    alternating = "alternating"
    fibonacci = "fibonacci"


class OrderingOption(str, Enum):
    standard = "standard"
    reversed = "reversed"


class FormatOption(str, Enum):
    csv = "csv"
    json = "json"


def parse_initial(value: str) -> Tuple[float, float, float, float]:
    """"re(α),im(α),re(β),im(β)" -> quatro reais."""
    parts = [part.strip() for part in value.split(",")]
    if len(parts) != 4:
        raise typer.BadParameter(f"esperados 4 reais separados por vírgula, recebido {value!r}", param_hint="--initial")
    try:
        re_a, im_a, re_b, im_b = (float(part) for part in parts)
    except ValueError as exc:
        raise typer.BadParameter(f"valor não numérico em {value!r}", param_hint="--initial") from exc
    return re_a, im_a, re_b, im_b


def resolve_output(output: Optional[Path], default_name: str, settings: ReportServiceSettings) -> Path:
    """Sem --output, grava na pasta de artefatos; um caminho informado é usado como está."""
    if output is None:
        return Path(settings.artifacts_dir) / default_name
    return output


def build_run_config(
    settings: ReportServiceSettings,
    *,
    schedule: ScheduleOption,
    theta1: Optional[float],
    theta2: Optional[float],
    ordering: Optional[OrderingOption],
    initial: str,
    steps: int,
    output: Path,
    output_format: FormatOption = FormatOption.csv,
    grid_size: Optional[int] = None,
    checkpoints: bool = False,
) -> RunConfig:
    """Aplica os padrões do ambiente e valida; erros viram BadParameter com o nome do flag."""
    fields = {
        "schedule": schedule.value,
        "theta1": settings.default_theta1 if theta1 is None else theta1,
        "theta2": None,
        "ordering": settings.ordering if ordering is None else ordering.value,
        "initial": parse_initial(initial),
        "steps": steps,
        "grid_size": grid_size,
        "output": output,
        "output_format": output_format.value,
        "checkpoints": checkpoints,
    }
    if schedule is not ScheduleOption.constant:
        fields["theta2"] = settings.default_theta2 if theta2 is None else theta2
    elif theta2 is not None:
        logger.debug("--theta2 ignorado na agenda constante")
    try:
        return RunConfig(**fields)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = error.get("loc") or ()
        hint = FLAG_NAMES.get(str(location[0]), "--theta2") if location else "--theta2"
        raise typer.BadParameter(error["msg"], param_hint=hint) from exc


@contextmanager
def domain_errors(param_hint: Optional[str] = None) -> Iterator[None]:
    try:
        yield
    except NumericalError as exc:
        logger.exception("Falha numérica", exc_info=exc)
        typer.echo(f"Erro numérico: {exc}", err=True)
        raise typer.Exit(code=EXIT_NUMERICAL_ERROR) from exc
    except WalkError as exc:
        logger.debug("Parâmetro rejeitado: %s", exc)
        raise typer.BadParameter(str(exc), param_hint=param_hint) from exc


@contextmanager
def io_errors(action: str) -> Iterator[None]:
    try:
        yield
    except OSError as exc:
        logger.exception("Falha de E/S ao %s", action, exc_info=exc)
        typer.echo(f"Erro de E/S ao {action}: {exc}", err=True)
        raise typer.Exit(code=EXIT_IO_ERROR) from exc
