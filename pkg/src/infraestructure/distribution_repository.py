from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from domain.errors import DistributionError
from domain.models import PositionDistribution

logger = logging.getLogger(__name__)

DISTRIBUTION_COLUMNS = ("t", "n", "probability")
SIGMA_COLUMNS = ("t", "sigma")


def _read_csv(path: Path, columns: Tuple[str, ...]) -> pd.DataFrame:
    if not path.exists():
        raise FileNotFoundError(f"Arquivo CSV não encontrado em: {path}")
    try:
        df = pd.read_csv(path, sep=",", float_precision="round_trip")
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as exc:
        raise DistributionError(f"{path} não é um CSV legível: {exc}") from exc
    missing = [column for column in columns if column not in df.columns]
    if missing:
        raise DistributionError(f"{path} não possui as colunas {', '.join(missing)}")
    return df


class DistributionCsvRepository:
    """Acesso às distribuições gravadas por `simulate`, com carregamento preguiçoso (lazy).

    - Caminho padrão: distribution.csv na pasta de artefatos (env WALK_ARTIFACTS_DIR)
    - O arquivo só é lido na primeira consulta
    """

    def __init__(self, csv_path: Optional[Union[str, Path]] = None) -> None:
        self._csv_path = Path(csv_path) if csv_path else None
        self._df = None  # type: Optional[pd.DataFrame]

    @property
    def csv_path(self) -> Path:
        if self._csv_path is not None:
            return self._csv_path
        project_root = Path(__file__).resolve().parents[2]
        default_dir = os.getenv("WALK_ARTIFACTS_DIR", str(project_root / "src" / "data" / "artifacts"))
        return Path(default_dir) / "distribution.csv"

    def available(self) -> bool:
        return self.csv_path.exists()

    def _ensure_loaded(self) -> pd.DataFrame:
        if self._df is None:
            df = _read_csv(self.csv_path, DISTRIBUTION_COLUMNS)
            try:
                self._df = df.astype({"t": "int64", "n": "int64", "probability": "float64"})
            except (TypeError, ValueError) as exc:
                raise DistributionError(f"Valores não numéricos em {self.csv_path}") from exc
            logger.debug("Carregadas %d linhas de %s", len(self._df), self.csv_path)
        return self._df

    def times(self) -> List[int]:
        return sorted(int(t) for t in self._ensure_loaded()["t"].unique())

    def load_at(self, time: int) -> PositionDistribution:
        df = self._ensure_loaded()
        rows = df[df["t"] == time].sort_values("n")
        if rows.empty:
            raise DistributionError(f"Nenhuma distribuição com t = {time} em {self.csv_path}")
        return PositionDistribution(
            time=int(time),
            sites=rows["n"].to_numpy(dtype=np.int64),
            probabilities=rows["probability"].to_numpy(dtype=np.float64),
        )

    def load(self) -> List[PositionDistribution]:
        return [self.load_at(t) for t in self.times()]


def load_sigma_samples(csv_path: Union[str, Path]) -> List[Tuple[float, float]]:
    """Lê um CSV (t, sigma) como o gravado por `exponent`."""
    df = _read_csv(Path(csv_path), SIGMA_COLUMNS)
    try:
        return [(float(t), float(sigma)) for t, sigma in zip(df["t"], df["sigma"])]
    except (TypeError, ValueError) as exc:
        raise DistributionError(f"Valores não numéricos em {csv_path}") from exc
