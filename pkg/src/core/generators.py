"""
Generadores de grafos libres de escala (preferential attachment y Chung-Lu) y lector de listas de aristas.
Los modelos aleatorios son los de networkx, alimentados con el generador Philox de la semilla;
toda la salida queda determinada por ella.
"""
import logging
from typing import Iterable

import networkx as nx
import numpy as np

from src.core.graph import Graph
from src.core.rng import make_rng
from src.errors import ParseError, UsageError
from src.models import GenSpec

logger = logging.getLogger(__name__)


def _without_isolated(nx_graph: nx.Graph) -> Graph:
    """Elimina los vértices aislados y re-indexa el resto conservando el orden."""
    touched = sorted(v for v, deg in nx_graph.degree() if deg > 0)
    index = {v: i for i, v in enumerate(touched)}
    dropped = nx_graph.number_of_nodes() - len(touched)
    if dropped:
        logger.debug("Se eliminaron %d vértices aislados", dropped)
    return Graph(len(touched), [(index[u], index[v]) for u, v in nx_graph.edges()])


def gen_preferential_attachment(spec: GenSpec) -> Graph:
    """
    Proceso de Barabási-Albert: parte de un grafo completo con attach_m + 1 vértices y cada vértice nuevo
    se une a attach_m vértices distintos, elegidos con probabilidad proporcional al grado actual.
    """
    spec.validate()
    n, m = spec.n, spec.attach_m
    nx_graph = nx.barabasi_albert_graph(n, m, seed=make_rng(spec.seed), initial_graph=nx.complete_graph(m + 1))
    logger.debug("PA generado: n=%d, m=%d, aristas=%d", n, m, nx_graph.number_of_edges())
    return Graph(n, nx_graph.edges())


def chung_lu_weights(n: int, beta_target: float) -> np.ndarray:
    """w_i = (n / i)^(1 / (beta_target - 1)) para i = 1..n."""
    i = np.arange(1, n + 1, dtype=np.float64)
    return (n / i) ** (1.0 / (beta_target - 1))


def gen_chung_lu_from_weights(weights, seed: int) -> Graph:
    """
    Cada par (u, v) recibe arista con probabilidad min(1, w_u w_v / suma(w)).
    Los vértices aislados se eliminan y el resto se re-indexa conservando el orden.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or np.any(w < 0) or not np.all(np.isfinite(w)):
        raise UsageError("Los pesos de Chung-Lu deben ser un vector finito no negativo.")
    nx_graph = nx.expected_degree_graph(w.tolist(), seed=make_rng(seed), selfloops=False)
    return _without_isolated(nx_graph)


def gen_chung_lu(spec: GenSpec) -> Graph:
    spec.validate()
    return gen_chung_lu_from_weights(chung_lu_weights(spec.n, spec.beta_target), spec.seed)


def parse_edge_list(lines: Iterable[str]) -> Graph:
    """
    Formato texto: un par "u v" por línea; las líneas que empiezan con '#' y las vacías se ignoran.
    Las aristas duplicadas se colapsan; n es el mayor id + 1.
    """
    edges = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"se esperaban dos enteros 'u v', se leyó '{line}'", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"token no entero en '{line}'", line_no)
        if u < 0 or v < 0:
            raise ParseError(f"ids de vértice negativos en '{line}'", line_no)
        if u == v:
            raise ParseError(f"bucle en el vértice {u}", line_no)
        edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    return Graph(n, edges)


def load_edge_list(path: str) -> Graph:
    try:
        with open(path, mode="r", encoding="utf-8") as file:
            return parse_edge_list(file)
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} no es texto UTF-8 válido (byte {e.start}).")


def generate(spec: GenSpec) -> Graph:
    """Despacha según spec.model."""
    spec.validate()
    if spec.model == "pa":
        return gen_preferential_attachment(spec)
    if spec.model == "chung-lu":
        return gen_chung_lu(spec)
    return load_edge_list(spec.path)
