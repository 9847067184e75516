import logging

from src.config.settings import settings
from src.core.drift import measure_drift
from src.core.engines import default_budget, run_trials
from src.core.fitness import approx_ratio
from src.core.generators import generate
from src.core.graph import Graph, Solution
from src.core.oracles import exact_solve, is_3_local_optimum, size_lower_bound, size_upper_bound
from src.core.plb import ratio_bounds
from src.core.rng import generator_id
from src.crud.graph_crud import GraphCRUD
from src.crud.trial_crud import TrialCRUD
from src.errors import PlbEaError, StorageError
from src.models import (
    Algorithm,
    ExperimentConfig,
    PlbParams,
    Problem,
    ProblemKind,
    ReferenceKind,
    RunBudget,
    Sense,
    TrialRecord,
)
from src.services.plb_service import PlbService
from src.utils.tools import config_hash

logger = logging.getLogger(__name__)


class ExperimentService:
    def __init__(self, exact_limit: int | None = None, workers: int | None = None):
        self.exact_limit = settings.exact_limit if exact_limit is None else exact_limit
        self.workers = settings.workers if workers is None else workers

    # --- Grafo ---
    @staticmethod
    def _graph_for(config: ExperimentConfig) -> Graph:
        if config.gen is not None:
            return generate(config.gen)
        return GraphCRUD.load(config.graph_path)

    # --- Parámetros PLB: el (beta, t) con la cota más ajustada para esta corrida ---
    @staticmethod
    def _tightest_params(graph: Graph, config: ExperimentConfig, p: Problem, algorithm: Algorithm):
        best = None
        for params in PlbService.fitted_grid(graph, config.betas, config.ts):
            if params.c1 <= 0:
                continue
            bound = ratio_bounds(params).for_run(p.kind, algorithm)
            if best is None or bound < best[1]:
                best = (params, bound)
        return best if best is not None else (None, None)

    # --- Referencia para la razón de aproximación ---
    def _reference(self, graph: Graph, p: Problem) -> tuple[int, ReferenceKind]:
        if graph.n <= self.exact_limit:
            return exact_solve(graph, p, self.exact_limit).optimum_size, ReferenceKind.EXACT
        if p.sense is Sense.MAXIMIZE:
            return size_upper_bound(graph, p), ReferenceKind.UPPER_BOUND
        return size_lower_bound(graph, p), ReferenceKind.LOWER_BOUND

    @staticmethod
    def _ratio(size: int | None, reference: int, p: Problem, kind: ReferenceKind) -> float | None:
        if size is None or size < 1 or reference < 1:
            return None
        return approx_ratio(size, reference, p, kind).ratio

    def _row(
        self,
        index: int,
        graph: Graph,
        record: TrialRecord,
        p: Problem,
        params: PlbParams | None,
        bound: float | None,
        reference: tuple[int, ReferenceKind],
    ) -> dict:
        ref_size, ref_kind = reference
        local_opt = None
        if p.kind is ProblemKind.MIS and record.best_solution is not None:
            local_opt, _ = is_3_local_optimum(graph, Solution.from_string(record.best_solution))
        return {
            "trial": index,
            "seed": record.seed,
            "n": record.n,
            "m": record.m,
            "beta": None if params is None else params.beta,
            "t": None if params is None else params.t,
            "c1_fitted": None if params is None else params.c1,
            "problem": record.problem,
            "algo": record.algorithm,
            "evals_to_feasible": record.evals_to_feasible,
            "evals_total": record.evals_total,
            "best_size": record.best_feasible_size,
            "reference": ref_size,
            "reference_kind": ref_kind.value,
            "ratio": self._ratio(record.best_feasible_size, ref_size, p, ref_kind),
            "theo_bound": bound,
            "wall_ms": round(record.wall_time * 1000, 3),
            "first_size": record.first_feasible_size,
            "first_ratio": self._ratio(record.first_feasible_size, ref_size, p, ref_kind),
            "evals_to_empty": record.evals_to_empty,
            "local_opt": local_opt,
        }

    def execute(self, config: ExperimentConfig) -> tuple[list[dict], dict]:
        """Corre el experimento completo y devuelve (filas del CSV, cabecera)."""
        config.validate()
        p = Problem.parse(config.problem, config.mvc_literal)
        algorithm = Algorithm.parse(config.algorithm)
        graph = self._graph_for(config)

        max_evaluations = config.max_evaluations or default_budget(p, algorithm, graph.n)
        budget = RunBudget(max_evaluations=max_evaluations)
        params, bound = self._tightest_params(graph, config, p, algorithm)
        reference = self._reference(graph, p)

        logger.info("Experimento %s/%s: n=%d, %d corridas, presupuesto %d", p, algorithm.value, graph.n, config.trials, max_evaluations)
        records = run_trials(graph, p, algorithm, budget, config.seeds(), workers=self.workers)
        rows = [self._row(i, graph, r, p, params, bound, reference) for i, r in enumerate(records)]
        header = {"config_hash": config_hash(config.to_dict()), "generator_id": generator_id()}
        return rows, header

    def run(self, config: ExperimentConfig) -> tuple[bool, object]:
        try:
            rows, header = self.execute(config)
            TrialCRUD.write_csv(config.output, rows, header)
            logger.info("Resultados escritos en %s (%d filas)", config.output, len(rows))
            return True, {"output": config.output, "rows": rows, "header": header}
        except PlbEaError as e:
            logger.error("Falló el experimento: %s", e)
            return False, e
        except OSError as e:
            logger.error("Error de archivo en el experimento: %s", e)
            return False, StorageError(f"Error de archivo: {e}")

    def drift(self, graph: Graph, p: Problem, trials: int, seed: int, max_evaluations: int | None = None) -> tuple[bool, object]:
        try:
            report = measure_drift(graph, p, trials, seed, max_evaluations=max_evaluations, workers=self.workers)
            return True, report
        except PlbEaError as e:
            return False, e
