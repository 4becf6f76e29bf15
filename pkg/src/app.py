from __future__ import annotations

import logging

import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

from application.dependencies import get_log_level
from presentation.compare_command import compare
from presentation.exponent_command import exponent
from presentation.limit_command import limit
from presentation.simulate_command import simulate
from presentation.spectrum_command import spectrum

load_dotenv()


def configure_logging(level: int) -> None:
    """Logs vão para stderr; stdout e artefatos ficam limpos."""
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)],
        force=True,
    )


app = typer.Typer(
    name="fibowalk",
    help="Caminhadas quânticas em tempo discreto com moedas dependentes do tempo (agenda de Fibonacci).",
    add_completion=False,
    no_args_is_help=True,
)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Logs em nível DEBUG")) -> None:
    configure_logging(logging.DEBUG if verbose else get_log_level())


app.command("simulate")(simulate)
app.command("spectrum")(spectrum)
app.command("limit")(limit)
app.command("compare")(compare)
app.command("exponent")(exponent)

if __name__ == "__main__":
    app()
