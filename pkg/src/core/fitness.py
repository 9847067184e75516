"""
Funciones de fitness mono y bi-objetivo para MDS, MVC, CDS y MIS, factibilidad y razón de aproximación.
Todos los valores objetivo son enteros exactos.
"""
from dataclasses import dataclass

import numpy as np

from src.core.graph import (
    DominationState,
    Graph,
    Solution,
    conflict_count,
    selected_component_count,
    uncovered_edge_count,
    undominated_count,
)
from src.errors import UsageError
from src.models import ApproxRatio, ObjectiveVector, Problem, ProblemKind, ReferenceKind, Sense


def _ones(g: Graph, x: Solution) -> int:
    if x.n != g.n:
        raise UsageError(f"La solución tiene largo {x.n} y el grafo n={g.n}.")
    return x.size


def _require_cds_graph(g: Graph):
    if not g.is_connected:
        raise UsageError("CDS requiere un grafo conexo (no existe CDS en un grafo desconexo).")
    if g.n < 2:
        raise UsageError("CDS requiere n >= 2: con un solo vértice la penalización no separa factibles.")


# --- MDS ---
def mds_scalar(g: Graph, x: Solution) -> int:
    return g.n * undominated_count(g, x) + _ones(g, x)


def mds_bi(g: Graph, x: Solution) -> ObjectiveVector:
    return ObjectiveVector(undominated_count(g, x), _ones(g, x))


# --- MVC (penalización por aristas descubiertas con peso n + 1) ---
def mvc_scalar(g: Graph, x: Solution) -> int:
    return (g.n + 1) * uncovered_edge_count(g, x) + _ones(g, x)


def mvc_bi(g: Graph, x: Solution) -> ObjectiveVector:
    return ObjectiveVector(uncovered_edge_count(g, x), _ones(g, x))


# --- CDS ---
def cds_scalar(g: Graph, x: Solution) -> int:
    _require_cds_graph(g)
    penalty = undominated_count(g, x) + selected_component_count(g, x) - 1
    return g.n ** 2 * penalty + _ones(g, x)


def cds_bi(g: Graph, x: Solution) -> ObjectiveVector:
    _require_cds_graph(g)
    return ObjectiveVector(undominated_count(g, x) + selected_component_count(g, x), _ones(g, x))


# --- MIS (se maximiza) ---
def mis_scalar(g: Graph, x: Solution) -> int:
    return _ones(g, x) - g.n * conflict_count(g, x)


def mis_bi(g: Graph, x: Solution) -> ObjectiveVector:
    return ObjectiveVector(_ones(g, x), -conflict_count(g, x))


def scalar_fitness(g: Graph, x: Solution, p: Problem) -> int:
    if p.kind is ProblemKind.MDS or (p.kind is ProblemKind.MVC and p.mvc_literal):
        return mds_scalar(g, x)
    return {ProblemKind.MVC: mvc_scalar, ProblemKind.CDS: cds_scalar, ProblemKind.MIS: mis_scalar}[p.kind](g, x)


def bi_fitness(g: Graph, x: Solution, p: Problem) -> ObjectiveVector:
    if p.kind is ProblemKind.MDS or (p.kind is ProblemKind.MVC and p.mvc_literal):
        return mds_bi(g, x)
    return {ProblemKind.MVC: mvc_bi, ProblemKind.CDS: cds_bi, ProblemKind.MIS: mis_bi}[p.kind](g, x)


def is_feasible(g: Graph, x: Solution, p: Problem) -> bool:
    if p.kind is ProblemKind.MDS:
        return undominated_count(g, x) == 0
    if p.kind is ProblemKind.MVC:
        return uncovered_edge_count(g, x) == 0
    if p.kind is ProblemKind.CDS:
        return undominated_count(g, x) == 0 and selected_component_count(g, x) == 1
    return conflict_count(g, x) == 0


def approx_ratio(achieved: int, reference: int, p: Problem, kind: ReferenceKind = ReferenceKind.EXACT) -> ApproxRatio:
    """Minimización: achieved / reference. Maximización: reference / achieved."""
    if achieved < 1 or reference < 1:
        raise UsageError(f"Los tamaños deben ser >= 1 (achieved={achieved}, reference={reference}).")
    if p.sense is Sense.MINIMIZE:
        ratio = achieved / reference
    else:
        ratio = reference / achieved
    return ApproxRatio(achieved=achieved, reference=reference, ratio=ratio, reference_kind=ReferenceKind(kind))


@dataclass(frozen=True)
class Evaluation:
    """Resultado de una evaluación: valor (escalar o vector), factibilidad, |x|_1 y potencial de penalización."""
    value: int | ObjectiveVector
    feasible: bool
    size: int
    potential: int


class Evaluator:
    """
    Evalúa estados incrementales de una corrida y cuenta cada invocación.
    u(x) sale del DominationState; w(x), aristas descubiertas y conflictos se recalculan.
    """

    def __init__(self, g: Graph, problem: Problem, bi_objective: bool = False):
        if problem.kind is ProblemKind.CDS:
            _require_cds_graph(g)
        self.graph = g
        self.problem = problem
        self.bi_objective = bi_objective
        self.evaluations = 0

    def evaluate(self, state: DominationState) -> Evaluation:
        self.evaluations += 1
        g, kind, bits = self.graph, self.problem.kind, state.bits
        size = int(np.count_nonzero(bits))
        u = state.undominated

        if kind is ProblemKind.MDS:
            feasible, potential = u == 0, u
            value = ObjectiveVector(u, size) if self.bi_objective else g.n * u + size
        elif kind is ProblemKind.MVC:
            uncovered = uncovered_edge_count(g, bits)
            feasible = uncovered == 0
            if self.problem.mvc_literal:
                potential = u
                value = ObjectiveVector(u, size) if self.bi_objective else g.n * u + size
            else:
                potential = uncovered
                value = ObjectiveVector(uncovered, size) if self.bi_objective else (g.n + 1) * uncovered + size
        elif kind is ProblemKind.CDS:
            w = selected_component_count(g, bits)
            feasible, potential = u == 0 and w == 1, u + w - 1
            value = ObjectiveVector(u + w, size) if self.bi_objective else g.n ** 2 * (u + w - 1) + size
        else:
            conflicts = conflict_count(g, bits)
            feasible, potential = conflicts == 0, conflicts
            value = ObjectiveVector(size, -conflicts) if self.bi_objective else size - g.n * conflicts

        return Evaluation(value=value, feasible=feasible, size=size, potential=potential)
