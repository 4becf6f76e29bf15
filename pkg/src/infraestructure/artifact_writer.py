from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Union

import orjson
import pandas as pd

from application.report_service import ExponentResult, LimitTable
from domain.models import PositionDistribution, SpectralData

logger = logging.getLogger(__name__)

# 17 dígitos significativos: o float64 volta idêntico na leitura
CSV_FLOAT_FORMAT = "%.17g"
JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE

PathLike = Union[str, Path]


def _prepare(path: PathLike) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target


def write_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    target = _prepare(path)
    frame.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    logger.debug("CSV com %d linhas gravado em %s", len(frame), target)
    return target


def write_json(payload: Any, path: PathLike) -> Path:
    target = _prepare(path)
    target.write_bytes(orjson.dumps(payload, option=JSON_OPTIONS))
    logger.debug("JSON gravado em %s", target)
    return target


def distributions_frame(distributions: Iterable[PositionDistribution]) -> pd.DataFrame:
    frames = [
        pd.DataFrame({"t": dist.time, "n": dist.sites, "probability": dist.probabilities})
        for dist in distributions
    ]
    if not frames:
        return pd.DataFrame(columns=["t", "n", "probability"])
    return pd.concat(frames, ignore_index=True).astype({"t": "int64", "n": "int64", "probability": "float64"})


def write_distributions(distributions: Iterable[PositionDistribution], path: PathLike, output_format: str = "csv") -> Path:
    """Esquema fixo (t, n, probability), uma linha por sítio admissível."""
    distributions = list(distributions)
    if output_format == "json":
        payload = [
            {
                "t": dist.time,
                "n": [int(n) for n in dist.sites],
                "probability": [float(p) for p in dist.probabilities],
            }
            for dist in distributions
        ]
        return write_json(payload, path)
    return write_csv(distributions_frame(distributions), path)


def spectrum_frame(spectral: SpectralData) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "k": spectral.nodes,
            "w": spectral.dispersion,
            "lambda1_re": spectral.eigenvalues[:, 0].real,
            "lambda1_im": spectral.eigenvalues[:, 0].imag,
            "lambda2_re": spectral.eigenvalues[:, 1].real,
            "lambda2_im": spectral.eigenvalues[:, 1].imag,
            "h1": spectral.group_velocities[:, 0],
            "h2": spectral.group_velocities[:, 1],
        }
    )


def write_spectrum(spectral: SpectralData, path: PathLike, output_format: str = "csv") -> Path:
    frame = spectrum_frame(spectral)
    if output_format == "json":
        return write_json({"theta": spectral.theta.theta, "rows": frame.to_dict(orient="records")}, path)
    return write_csv(frame, path)


def moments_path(path: PathLike) -> Path:
    """`<stem>.moments.csv` ao lado da tabela da densidade."""
    target = Path(path)
    return target.with_name(f"{target.stem}.moments.csv")


def fit_path(path: PathLike) -> Path:
    target = Path(path)
    return target.with_name(f"{target.stem}.fit.json")


def write_limit_table(table: LimitTable, path: PathLike, output_format: str = "csv") -> Path:
    density = pd.DataFrame({"x": table.x, "density": table.density, "cdf": table.cdf})
    moments = pd.DataFrame(table.moments, columns=["r", "moment"]).astype({"r": "int64"})
    if output_format == "json":
        payload: Dict[str, Any] = {
            "a": table.params.a,
            "c0": table.params.c0,
            "grid": density.to_dict(orient="records"),
            "moments": moments.to_dict(orient="records"),
        }
        return write_json(payload, path)
    write_csv(moments, moments_path(path))
    return write_csv(density, path)


def write_exponent(result: ExponentResult, path: PathLike) -> Path:
    """CSV (t, sigma) e o registro do ajuste em `<stem>.fit.json`."""
    samples = pd.DataFrame(result.samples, columns=["t", "sigma"])
    fit: Dict[str, Any] = {
        "exponent": result.fit.exponent,
        "intercept": result.fit.intercept,
        "r_squared": result.fit.r_squared,
        "sample_times": list(result.fit.sample_times),
    }
    if result.schedule is not None:
        fit["schedule"] = {
            "kind": result.schedule.kind,
            "theta1": result.schedule.theta1.theta,
            "theta2": result.schedule.theta2.theta,
            "ordering": result.schedule.ordering,
            "word_prefix_sha256": result.schedule.digest(),
        }
    write_json(fit, fit_path(path))
    return write_csv(samples, path)
