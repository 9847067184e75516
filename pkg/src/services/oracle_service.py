import logging

from src.core.graph import Graph
from src.core.oracles import exact_solve, greedy_cds, greedy_mds, greedy_mis, size_bounds
from src.errors import InstanceTooLargeError, PlbEaError, UsageError
from src.models import Problem, ProblemKind

logger = logging.getLogger(__name__)

METHODS = ("exact", "greedy", "bounds")


class OracleService:
    def solve(self, graph: Graph, problem: Problem, method: str, limit: int | None = None) -> tuple[bool, object]:
        """Devuelve (True, dict serializable a JSON) o (False, error)."""
        try:
            if method == "exact":
                return True, exact_solve(graph, problem, limit).to_dict()
            if method == "greedy":
                return True, self._greedy(graph, problem).to_dict()
            if method == "bounds":
                bounds = size_bounds(graph, problem)
                return True, {"problem": str(problem), "method": "bound", "lower": bounds.lower, "upper": bounds.upper}
            return False, UsageError(f"Método desconocido '{method}'. Opciones: {', '.join(METHODS)}.")
        except InstanceTooLargeError as e:
            logger.warning("%s", e)
            return False, e
        except PlbEaError as e:
            return False, e

    @staticmethod
    def _greedy(graph: Graph, problem: Problem):
        if problem.kind is ProblemKind.MDS:
            return greedy_mds(graph)
        if problem.kind is ProblemKind.CDS:
            return greedy_cds(graph)
        if problem.kind is ProblemKind.MIS:
            return greedy_mis(graph)
        raise UsageError("No hay construcción golosa para MVC; use --method exact o bounds.")
