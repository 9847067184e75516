import logging
from dataclasses import asdict

from src.config.consts import DEFAULT_PLB_BETAS, DEFAULT_PLB_TS
from src.core.graph import Graph
from src.core.plb import check_plb, constants_ab, fit_c1, ratio_bounds
from src.errors import DomainError, PlbEaError
from src.models import PlbParams

logger = logging.getLogger(__name__)


class PlbService:
    def certify(self, graph: Graph, beta: float, t: float, c1: float | None = None) -> dict:
        """
        Reporte PLB-U de un grafo para (beta, t). Si no se entrega c1 se usa el ajustado;
        en un grafo sin aristas solo se puede verificar un c1 explícito.
        Las constantes a, b y las cotas solo aparecen cuando están definidas (beta > 2, c1 > 0).
        """
        fitted = fit_c1(graph, beta, t) if c1 is None or graph.m > 0 else None
        params = PlbParams(beta, t, fitted if c1 is None else c1)
        check = check_plb(graph, params)
        report = {
            "beta": beta,
            "t": t,
            "c1": params.c1,
            "c1_fitted": fitted,
            "passed": check.passed,
            "buckets": [asdict(b) for b in check.buckets],
            "a": None,
            "b": None,
            "b_alt": None,
            "ratio_bounds": None,
        }
        try:
            consts = constants_ab(params)
            report.update(a=consts.a, b=consts.b, b_alt=consts.b_alt, ratio_bounds=ratio_bounds(params).to_dict())
        except DomainError as e:
            logger.info("Sin constantes de aproximación para beta=%s: %s", beta, e)
        if not check.passed:
            logger.warning("El grafo no cumple PLB-U con beta=%s, t=%s, c1=%s", beta, t, params.c1)
        return report

    def check_graph(self, graph: Graph, beta: float, t: float, c1: float | None = None) -> tuple[bool, object]:
        try:
            return True, self.certify(graph, beta, t, c1)
        except PlbEaError as e:
            return False, e

    def check_grid(self, graph: Graph, betas=DEFAULT_PLB_BETAS, ts=DEFAULT_PLB_TS) -> tuple[bool, object]:
        """Un reporte por cada (beta, t) de la grilla."""
        try:
            return True, [self.certify(graph, beta, t) for beta in betas for t in ts]
        except PlbEaError as e:
            return False, e

    @staticmethod
    def fitted_grid(graph: Graph, betas, ts) -> list[PlbParams]:
        """Parámetros con c1 ajustado para los (beta, t) donde las cotas de razón existen."""
        if graph.m == 0:
            return []
        return [PlbParams(beta, t, fit_c1(graph, beta, t)) for beta in betas for t in ts if beta > 2]
