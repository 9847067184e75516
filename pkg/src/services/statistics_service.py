import logging
import math

import numpy as np
import pandas as pd

from src.config.consts import PLB_REL_TOLERANCE, SUMMARY_COLUMNS
from src.crud.trial_crud import TrialCRUD
from src.errors import PlbEaError, StorageError
from src.models import SummaryReport
from src.utils.tools import clean_number

logger = logging.getLogger(__name__)


class StatisticsService:
    """Agregados derivados únicamente del CSV de corridas."""

    @staticmethod
    def aggregate(df: pd.DataFrame) -> list[dict]:
        """Una fila por (n, problem, algo)."""
        rows = []
        for (n, problem, algo), group in df.groupby(["n", "problem", "algo"], sort=True):
            feasible = group["evals_to_feasible"].dropna()
            ratios = group["ratio"].dropna()
            checked = group.dropna(subset=["ratio", "theo_bound"])
            satisfied = None
            if not checked.empty:
                within = checked["ratio"] <= checked["theo_bound"] * (1 + PLB_REL_TOLERANCE)
                satisfied = float(within.mean())
            rows.append({
                "n": int(n),
                "problem": problem,
                "algo": algo,
                "trials": int(len(group)),
                "feasible_fraction": float(len(feasible) / len(group)),
                "median_evals_to_feasible": clean_number(feasible.median()) if not feasible.empty else None,
                "mean_evals_to_feasible": clean_number(feasible.mean()) if not feasible.empty else None,
                "mean_ratio": clean_number(ratios.mean()) if not ratios.empty else None,
                "max_ratio": clean_number(ratios.max()) if not ratios.empty else None,
                "theo_bound": clean_number(group["theo_bound"].dropna().min()) if group["theo_bound"].notna().any() else None,
                "bound_satisfaction": satisfied,
            })
        return rows

    @staticmethod
    def scaling(rows: list[dict]) -> list[dict]:
        """
        Para cada (problem, algo) con al menos dos tamaños: ajuste T = c n ln n por mínimos
        cuadrados sobre las medianas, exponente log-log y razones de duplicación T(2n)/T(n).
        """
        frame = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
        frame = frame.dropna(subset=["median_evals_to_feasible"])
        studies = []
        for (problem, algo), group in frame.groupby(["problem", "algo"], sort=True):
            group = group[group["n"] > 1].sort_values("n")
            if len(group) < 2:
                continue
            n = group["n"].to_numpy(dtype=np.float64)
            medians = group["median_evals_to_feasible"].to_numpy(dtype=np.float64)
            x = n * np.log(n)
            coefficient = float(np.dot(x, medians) / np.dot(x, x))
            exponent = None
            if np.all(medians > 0):
                exponent = float(np.polyfit(np.log(n), np.log(medians), 1)[0])

            by_n = dict(zip(n.astype(int).tolist(), medians.tolist()))
            doubling = [
                {
                    "n": size,
                    "next_n": 2 * size,
                    "ratio": by_n[2 * size] / by_n[size],
                    "expected": 2 * math.log(2 * size) / math.log(size),
                }
                for size in sorted(by_n)
                if 2 * size in by_n and by_n[size] > 0
            ]
            studies.append({
                "problem": problem,
                "algo": algo,
                "c": coefficient,
                "exponent": exponent,
                "points": [{"n": k, "median": v} for k, v in sorted(by_n.items())],
                "doubling": doubling,
            })
        return studies

    def build_report(self, paths: str | list[str]) -> SummaryReport:
        """
        Agrega uno o varios CSV de corridas (ej. uno por tamaño del estudio de escalamiento).
        Las claves de cabecera que difieren entre archivos quedan como lista.
        """
        paths = [paths] if isinstance(paths, str) else list(paths)
        frames, header = [], {}
        for path in paths:
            df, file_header = TrialCRUD.read_csv(path)
            frames.append(df)
            for key, value in file_header.items():
                header.setdefault(key, []).append(value)
        header = {k: v[0] if len(set(v)) == 1 else v for k, v in header.items()}
        rows = self.aggregate(pd.concat(frames, ignore_index=True))
        return SummaryReport(rows=rows, scaling=self.scaling(rows), source=", ".join(paths), header=header)

    def report(self, paths: str | list[str]) -> tuple[bool, object]:
        try:
            summary = self.build_report(paths)
            logger.info("Reporte de %s: %d configuraciones", summary.source, len(summary.rows))
            return True, summary
        except PlbEaError as e:
            logger.error("%s", e)
            return False, e
        except OSError as e:
            return False, StorageError(f"No se pudieron leer los resultados: {e}")
