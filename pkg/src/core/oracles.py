"""
Verdad de referencia: solvers exactos (n pequeño), las tres construcciones golosas,
cotas combinatorias para n grande y el verificador de 3-óptimo local.
Los conjuntos se representan internamente como máscaras de bits (int de Python).
"""
import logging
import math
from itertools import combinations

from src.config.consts import RECURRENCE_TOLERANCE
from src.config.settings import settings
from src.core.fitness import is_feasible
from src.core.graph import Graph, Solution, conflict_count, selected_component_count, undominated_count
from src.errors import InstanceTooLargeError, UsageError
from src.models import OracleResult, Problem, ProblemKind, SizeBounds

logger = logging.getLogger(__name__)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _members(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _masks(g: Graph) -> tuple[list[int], list[int]]:
    """Máscaras de vecindad abierta y cerrada por vértice."""
    open_masks = [0] * g.n
    for v, adj in enumerate(g.adjacency):
        for u in adj:
            open_masks[v] |= 1 << u
    closed_masks = [m | (1 << v) for v, m in enumerate(open_masks)]
    return open_masks, closed_masks


def _solution(n: int, mask: int) -> Solution:
    return Solution.from_indices(n, list(_members(mask)))


# --- Solvers exactos ---
def _exact_mds(g: Graph) -> int:
    _, closed = _masks(g)
    full = (1 << g.n) - 1
    cover = g.max_degree + 1
    greedy = greedy_mds(g)
    best = [greedy.optimum_size, _mask_of(greedy.witness)]

    def search(chosen: int, dominated: int, count: int):
        if dominated == full:
            if count < best[0]:
                best[0], best[1] = count, chosen
            return
        remaining = full & ~dominated
        if count + math.ceil(_popcount(remaining) / cover) >= best[0]:
            return
        # Algún vértice de N[v] tiene que estar en D; se elige el v con menos opciones
        v = min(_members(remaining), key=lambda w: (_popcount(closed[w]), w))
        options = sorted(_members(closed[v]), key=lambda u: (-_popcount(closed[u] & remaining), u))
        for u in options:
            search(chosen | (1 << u), dominated | closed[u], count + 1)

    search(0, 0, 0)
    return best[1]


def _exact_mis(g: Graph) -> int:
    open_masks, closed = _masks(g)
    best = [0, 0]

    def search(candidates: int, chosen: int, size: int):
        if candidates == 0:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _popcount(candidates) <= best[0]:
            return
        residual = {v: _popcount(open_masks[v] & candidates) for v in _members(candidates)}
        low = min(residual, key=lambda v: (residual[v], v))
        if residual[low] <= 1:
            # Un vértice de grado residual <= 1 siempre está en algún conjunto máximo
            search(candidates & ~closed[low], chosen | (1 << low), size + 1)
            return
        v = max(residual, key=lambda w: (residual[w], -w))
        search(candidates & ~closed[v], chosen | (1 << v), size + 1)
        search(candidates & ~(1 << v), chosen, size)

    search((1 << g.n) - 1, 0, 0)
    return best[1]


def _exact_cds(g: Graph) -> int:
    """
    Enumeración de subconjuntos conexos (ESU) con poda por cota; cada conjunto conexo
    se visita una sola vez a partir de su vértice de menor id.
    """
    open_masks, closed = _masks(g)
    full = (1 << g.n) - 1
    per_vertex = max(g.max_degree, 1)
    greedy = greedy_cds(g)
    best = [greedy.optimum_size, _mask_of(greedy.witness)]

    def extend(sub: int, ext: int, boundary: int, dominated: int, size: int, root: int):
        if dominated == full:
            if size < best[0]:
                best[0], best[1] = size, sub
            return
        if size + max(1, math.ceil(_popcount(full & ~dominated) / per_vertex)) >= best[0]:
            return
        while ext:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            exclusive = open_masks[w] & ~(sub | boundary)
            exclusive &= ~((1 << (root + 1)) - 1)
            extend(sub | low, ext | exclusive, boundary | open_masks[w], dominated | closed[w], size + 1, root)

    for root in range(g.n):
        above = ~((1 << (root + 1)) - 1)
        extend(1 << root, open_masks[root] & above & full, open_masks[root], closed[root], 1, root)
    return best[1]


def _mask_of(x: Solution) -> int:
    mask = 0
    for v in x.indices():
        mask |= 1 << v
    return mask


def exact_solve(g: Graph, p: Problem, limit: int | None = None) -> OracleResult:
    """Óptimo exacto (mínimo para MDS/MVC/CDS, máximo para MIS) por ramificación y poda."""
    limit = settings.exact_limit if limit is None else limit
    if g.n > limit:
        raise InstanceTooLargeError(f"Instancia demasiado grande: n={g.n} supera el límite exacto {limit}.")
    if p.kind is ProblemKind.CDS and not g.is_connected:
        raise UsageError("CDS requiere un grafo conexo.")

    if p.kind is ProblemKind.MDS:
        mask = _exact_mds(g)
    elif p.kind is ProblemKind.MIS:
        mask = _exact_mis(g)
    elif p.kind is ProblemKind.MVC:
        # El complemento de un conjunto independiente máximo es una cobertura mínima
        mask = ((1 << g.n) - 1) & ~_exact_mis(g)
    else:
        mask = _exact_cds(g)

    witness = _solution(g.n, mask)
    logger.debug("exact_solve %s: n=%d, óptimo=%d", p, g.n, witness.size)
    return OracleResult(problem=str(p), optimum_size=witness.size, witness=witness, method="exact")


# --- Construcciones golosas ---
def greedy_mds(g: Graph) -> OracleResult:
    """
    En cada paso agrega el vértice que domina más vértices aún no dominados (empates: menor id).
    La traza guarda n_j, los no dominados tras cada elección.
    """
    _, closed = _masks(g)
    full = (1 << g.n) - 1
    dominated, chosen, trace = 0, 0, []
    while dominated != full:
        remaining = full & ~dominated
        v = max(range(g.n), key=lambda w: (_popcount(closed[w] & remaining), -w))
        chosen |= 1 << v
        dominated |= closed[v]
        trace.append({"vertex": v, "undominated": _popcount(full & ~dominated)})
    witness = _solution(g.n, chosen)
    return OracleResult(ProblemKind.MDS.value, witness.size, witness, "greedy", trace)


def _cds_potential(g: Graph, x: Solution) -> int:
    return undominated_count(g, x) + selected_component_count(g, x)


def greedy_cds(g: Graph) -> OracleResult:
    """
    Desde el conjunto vacío agrega el vértice que más reduce f(S) = u(S) + w(S) (empates: menor id)
    hasta u = 0 y w = 1. Si ningún vértice reduce f, se prefieren vértices adyacentes a S.
    La traza guarda f(S_k) desde f(∅) = n.
    """
    if not g.is_connected:
        raise UsageError("greedy_cds requiere un grafo conexo.")
    open_masks, _ = _masks(g)
    chosen, chosen_mask = set(), 0
    current = _cds_potential(g, Solution.zeros(g.n))
    trace = [{"vertex": None, "potential": current}]
    while not chosen or undominated_count(g, Solution.from_indices(g.n, chosen)) or current != 1:
        best = None
        for v in range(g.n):
            if v in chosen:
                continue
            value = _cds_potential(g, Solution.from_indices(g.n, chosen | {v}))
            decrease = current - value
            adjacent = decrease <= 0 and bool(open_masks[v] & chosen_mask)
            key = (decrease, adjacent, -v)
            if best is None or key > best[0]:
                best = (key, v, value)
        _, v, current = best
        chosen.add(v)
        chosen_mask |= 1 << v
        trace.append({"vertex": v, "potential": current})
    witness = Solution.from_indices(g.n, chosen)
    return OracleResult(ProblemKind.CDS.value, witness.size, witness, "greedy", trace)


def greedy_mis(g: Graph) -> OracleResult:
    """Elige el vértice de menor grado residual (empates: menor id) y elimina su vecindad cerrada."""
    open_masks, closed = _masks(g)
    residual = (1 << g.n) - 1
    chosen, trace = 0, []
    while residual:
        v = min(_members(residual), key=lambda w: (_popcount(open_masks[w] & residual), w))
        trace.append({"vertex": v, "residual_degree": _popcount(open_masks[v] & residual)})
        chosen |= 1 << v
        residual &= ~closed[v]
    witness = _solution(g.n, chosen)
    return OracleResult(ProblemKind.MIS.value, witness.size, witness, "greedy", trace)


def greedy_matching(g: Graph) -> list[tuple[int, int]]:
    """Emparejamiento maximal recorriendo las aristas en orden lexicográfico."""
    used, matching = set(), []
    for u, v in g.edges:
        if u not in used and v not in used:
            used.update((u, v))
            matching.append((u, v))
    return matching


# --- 3-óptimo local ---
def is_3_local_optimum(g: Graph, x: Solution) -> tuple[bool, tuple[list[int], list[int]] | None]:
    """
    S es 3-óptimo local si ningún intercambio (U ⊆ S, T ⊆ V∖S, |U ∪ T| <= 3) mejora F.
    Sobre un conjunto independiente solo mejoran los intercambios con |T| > |U| que dejan
    el conjunto independiente. Devuelve (True, None) o (False, (U, T)).
    """
    if conflict_count(g, x) != 0:
        raise UsageError("La solución no es un conjunto independiente.")
    selected = set(x.indices())
    outside = [v for v in range(g.n) if v not in selected]
    adjacency = [set(adj) for adj in g.adjacency]

    for size_t in (1, 2, 3):
        for T in combinations(outside, size_t):
            if any(b in adjacency[a] for a, b in combinations(T, 2)):
                continue
            blockers = set().union(*(adjacency[t] for t in T)) & selected
            # |U| debe cubrir a todos los bloqueadores y cumplir |U| + |T| <= 3, |U| < |T|
            if len(blockers) < size_t and len(blockers) + size_t <= 3:
                return False, (sorted(blockers), list(T))
    return True, None


# --- Cotas ---
def size_lower_bound(g: Graph, p: Problem) -> int:
    if p.kind in (ProblemKind.MDS, ProblemKind.CDS):
        return math.ceil(g.n / (g.max_degree + 1))
    if p.kind is ProblemKind.MVC:
        return len(greedy_matching(g))
    return greedy_mis(g).optimum_size


def size_upper_bound(g: Graph, p: Problem) -> int:
    if p.kind is ProblemKind.MDS:
        return greedy_mds(g).optimum_size
    if p.kind is ProblemKind.MVC:
        return 2 * len(greedy_matching(g))
    if p.kind is ProblemKind.CDS:
        return greedy_cds(g).optimum_size
    return g.n - len(greedy_matching(g))


def size_bounds(g: Graph, p: Problem) -> SizeBounds:
    return SizeBounds(size_lower_bound(g, p), size_upper_bound(g, p))


# --- Verificaciones de las desigualdades de las construcciones golosas ---
def verify_greedy_mds_recurrence(g: Graph, limit: int | None = None) -> bool:
    """n_k <= n (1 - 1/|OPT|)^k para todo prefijo k de la traza golosa."""
    optimum = exact_solve(g, Problem(ProblemKind.MDS), limit).optimum_size
    greedy = greedy_mds(g)
    for k, step in enumerate(greedy.sequence_trace, start=1):
        bound = g.n * (1 - 1 / optimum) ** k
        if step["undominated"] > bound + RECURRENCE_TOLERANCE:
            logger.warning("Recurrencia violada en k=%d: n_k=%d > %.6f", k, step["undominated"], bound)
            return False
    return True


def verify_greedy_cds_steps(g: Graph, limit: int | None = None) -> tuple[bool, list[int]]:
    """
    Paso de la construcción golosa de CDS: f(S_{k+1}) <= f(S_k) - f(S_k)/|OPT| + 1.
    Devuelve (todo se cumple, índices k donde falla). Si el grafo supera el límite exacto,
    la comparación se hace contra la cota inferior y solo se registra en el log.
    """
    problem = Problem(ProblemKind.CDS)
    try:
        optimum, exact = exact_solve(g, problem, limit).optimum_size, True
    except InstanceTooLargeError:
        optimum, exact = size_lower_bound(g, problem), False
    potentials = [step["potential"] for step in greedy_cds(g).sequence_trace]
    failures = [
        k for k in range(len(potentials) - 1)
        if potentials[k + 1] > potentials[k] - potentials[k] / optimum + 1 + RECURRENCE_TOLERANCE
    ]
    if not exact:
        logger.info("Pasos golosos de CDS contra la cota inferior %d: %d desvíos (informativo)", optimum, len(failures))
        return True, failures
    return not failures, failures


def verify_greedy_mis_bound(g: Graph) -> bool:
    """|S_k| >= n / (grado promedio + 1)."""
    if g.n == 0:
        return True
    average = 2 * g.m / g.n
    return greedy_mis(g).optimum_size >= g.n / (average + 1) - RECURRENCE_TOLERANCE


def check_witness(g: Graph, result: OracleResult) -> bool:
    """El testigo de un resultado exacto o goloso debe ser factible."""
    return is_feasible(g, result.witness, Problem.parse(result.problem))
