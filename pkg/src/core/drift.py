"""
Medición empírica de la deriva multiplicativa del (1+1) EA durante la fase no factible:
E[X_t - X_{t+1} | X_t = s] contra s / (e n), con X el término de penalización del incumbente.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor

import pandas as pd

from src.config.consts import DRIFT_MIN_SAMPLES
from src.config.settings import settings
from src.core.engines import default_budget, one_plus_one_ea
from src.core.graph import Graph
from src.errors import UsageError
from src.models import Algorithm, DriftBin, DriftReport, DriftSample, Problem, ProblemKind, RunBudget

logger = logging.getLogger(__name__)

DRIFT_PROBLEMS = (ProblemKind.MDS, ProblemKind.CDS)


def collect_samples(g: Graph, p: Problem, seed: int, max_evaluations: int) -> list[DriftSample]:
    """Una corrida del EA detenida al primer incumbente factible; una muestra por iteración no factible."""
    samples: list[DriftSample] = []

    def observe(iteration, previous, current):
        if previous.potential > 0:
            samples.append(DriftSample(iteration, previous.potential, previous.potential - current.potential))

    budget = RunBudget(max_evaluations=max_evaluations, stop_when_feasible=True)
    one_plus_one_ea(g, p, budget, seed, observer=observe)
    return samples


def _collect_args(args) -> list[DriftSample]:
    return collect_samples(*args)


def summarize(samples: list[DriftSample], n: int) -> list[DriftBin]:
    """Agrupa por potencial s; los bins sin muestras no aparecen."""
    if not samples:
        return []
    frame = pd.DataFrame(samples, columns=list(DriftSample._fields))
    grouped = frame.groupby("potential")["decrease"].agg(["count", "mean"]).sort_index()
    bins = []
    for s, row in grouped.iterrows():
        expected = int(s) / (math.e * n)
        ratio = float(row["mean"]) / expected
        bins.append(DriftBin(
            potential=int(s),
            samples=int(row["count"]),
            mean_decrease=float(row["mean"]),
            expected=expected,
            ratio=ratio,
            below=ratio < 1,
        ))
    return bins


def measure_drift(
    g: Graph,
    p: Problem,
    trials: int,
    seed: int,
    max_evaluations: int | None = None,
    workers: int | None = None,
    min_samples: int = DRIFT_MIN_SAMPLES,
) -> DriftReport:
    """Corridas con semillas seed, seed + 1, ...; el flujo de muestras es determinista para una semilla dada."""
    if p.kind not in DRIFT_PROBLEMS and not p.mvc_literal:
        raise UsageError(f"La deriva solo se mide para MDS, CDS y la variante literal de MVC, se recibió {p}.")
    if trials < 1:
        raise UsageError("trials debe ser >= 1.")
    if max_evaluations is None:
        max_evaluations = 10 * default_budget(p, Algorithm.EA, g.n)
    workers = settings.workers if workers is None else workers

    jobs = [(g, p, seed + i, max_evaluations) for i in range(trials)]
    if workers <= 1 or trials <= 1:
        per_trial = [_collect_args(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            per_trial = list(executor.map(_collect_args, jobs))

    samples = [sample for trial in per_trial for sample in trial]
    bins = summarize(samples, g.n)
    report = DriftReport(problem=str(p), n=g.n, trials=trials, seed=seed, bins=bins, min_samples=min_samples)
    if report.flagged:
        logger.warning("Bins con deriva bajo s/(e n): %s", report.flagged)
    logger.debug("measure_drift: %d muestras en %d bins", len(samples), len(bins))
    return report
