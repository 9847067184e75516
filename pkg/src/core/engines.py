"""
(1+1) EA y GSEMO con mutación estándar por bits (probabilidad 1/n por bit), archivo de Pareto,
conteo exacto de evaluaciones y criterios de parada instrumentados.
"""
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from src.config.consts import ARCHIVE_AUDIT_EVERY
from src.config.settings import settings
from src.core.fitness import Evaluation, Evaluator
from src.core.graph import DominationState, Graph, Solution
from src.core.rng import make_rng
from src.errors import ArchiveInvariantError, UsageError
from src.models import Algorithm, ObjectiveVector, Problem, ProblemKind, RunBudget, Sense, TrialRecord

logger = logging.getLogger(__name__)

# Observador opcional: (iteración, evaluación del incumbente antes, evaluación después)
StepObserver = Callable[[int, Evaluation, Evaluation], None]


class Dominance(str, Enum):
    STRICT = "strict"
    WEAK = "weak"
    NONE = "none"


def flip_mask(n: int, rng: np.random.Generator) -> np.ndarray:
    """Índices a invertir: n sorteos Bernoulli(1/n), sin atajos de muestreo."""
    return np.flatnonzero(rng.random(n) < 1.0 / n)


def mutate(x: Solution, rng: np.random.Generator) -> Solution:
    bits = np.array(x.bits, dtype=np.uint8)
    flips = flip_mask(bits.size, rng)
    bits[flips] ^= 1
    return Solution(bits)


def dominates(p: Sequence[int], q: Sequence[int], sense: Sense | Sequence[Sense] = Sense.MINIMIZE) -> Dominance:
    """Dominancia de p sobre q, orientando cada componente según su sentido."""
    if len(p) != len(q):
        raise UsageError(f"Vectores de distinta aridad: {len(p)} y {len(q)}.")
    senses = [sense] * len(p) if isinstance(sense, Sense) else list(sense)
    if len(senses) != len(p):
        raise UsageError("La orientación debe tener una entrada por componente.")

    better = False
    for pi, qi, s in zip(p, q, senses):
        diff = (qi - pi) if s is Sense.MINIMIZE else (pi - qi)
        if diff < 0:
            return Dominance.NONE
        better = better or diff > 0
    return Dominance.STRICT if better else Dominance.WEAK


class ParetoArchive:
    """
    Población de GSEMO: una entrada por vector objetivo, todas mutuamente no dominadas.
    Un hijo con el mismo vector que una entrada existente se rechaza.
    """

    def __init__(self, sense: Sense):
        self.sense = sense
        self.entries: list[tuple[DominationState, Evaluation]] = []

    def __len__(self):
        return len(self.entries)

    def offer(self, state: DominationState, evaluation: Evaluation) -> bool:
        vector = evaluation.value
        if any(dominates(e.value, vector, self.sense) is not Dominance.NONE for _, e in self.entries):
            return False
        self.entries = [
            (s, e) for s, e in self.entries if dominates(vector, e.value, self.sense) is Dominance.NONE
        ]
        self.entries.append((state, evaluation))
        return True

    def select(self, rng: np.random.Generator) -> DominationState:
        return self.entries[int(rng.integers(len(self.entries)))][0]

    def vectors(self) -> list[ObjectiveVector]:
        return sorted(e.value for _, e in self.entries)

    def check_invariants(self, n: int):
        vectors = [e.value for _, e in self.entries]
        if len(set(vectors)) != len(vectors):
            raise ArchiveInvariantError("El archivo contiene vectores objetivo repetidos.")
        for i, p in enumerate(vectors):
            for j, q in enumerate(vectors):
                if i != j and dominates(p, q, self.sense) is not Dominance.NONE:
                    raise ArchiveInvariantError(f"La entrada {p} domina a {q} dentro del archivo.")
        if len(vectors) > n + 1:
            raise ArchiveInvariantError(f"El archivo tiene {len(vectors)} entradas (> n + 1 = {n + 1}).")


def default_budget(problem: Problem, algorithm: Algorithm, n: int) -> int:
    """EA: 50 n ln n (MDS, MVC, CDS) o 5 n^3 (MIS). GSEMO: 10 n^3."""
    if algorithm is Algorithm.GSEMO:
        value = 10 * n ** 3
    elif problem.kind is ProblemKind.MIS:
        value = 5 * n ** 3
    else:
        value = 50 * n * math.log(n) if n > 1 else 1
    return max(1, math.ceil(value))


def _accepts(child: Evaluation, parent: Evaluation, sense: Sense) -> bool:
    # Los empates siempre se aceptan
    if sense is Sense.MINIMIZE:
        return child.value <= parent.value
    return child.value >= parent.value


def _target_reached(size: int, budget: RunBudget, sense: Sense) -> bool:
    if budget.target is None:
        return False
    return size <= budget.target if sense is Sense.MINIMIZE else size >= budget.target


def _better_size(candidate: int, current: int | None, sense: Sense) -> bool:
    if current is None:
        return True
    return candidate < current if sense is Sense.MINIMIZE else candidate > current


def _random_state(g: Graph, rng: np.random.Generator) -> DominationState:
    bits = rng.integers(0, 2, size=g.n, dtype=np.uint8)
    return DominationState.from_solution(g, bits)


def _offspring(g: Graph, parent: DominationState, rng: np.random.Generator) -> DominationState:
    child = parent.copy()
    for v in flip_mask(g.n, rng).tolist():
        child.flip(g, v)
    return child


def _check_graph(g: Graph, p: Problem):
    if g.n < 1:
        raise UsageError("El grafo debe tener al menos un vértice.")
    if p.kind is ProblemKind.CDS and not g.is_connected:
        raise UsageError("CDS requiere un grafo conexo.")


def one_plus_one_ea(
    g: Graph,
    p: Problem,
    budget: RunBudget,
    seed: int,
    observer: StepObserver | None = None,
) -> TrialRecord:
    """
    Algoritmo (1+1) EA: x inicial uniforme; en cada iteración y = mutate(x) y x <- y
    si y es al menos tan bueno como x según el sentido del problema.
    """
    _check_graph(g, p)
    start = time.perf_counter()
    rng = make_rng(seed)
    evaluator = Evaluator(g, p)
    sense = p.sense

    state = _random_state(g, rng)
    current = evaluator.evaluate(state)
    evals_to_feasible = first_size = best_size = best_bits = None
    if current.feasible:
        evals_to_feasible, first_size, best_size, best_bits = 1, current.size, current.size, state.bits.copy()

    iteration = 0
    while evaluator.evaluations < budget.max_evaluations:
        if best_size is not None and (budget.stop_when_feasible or _target_reached(best_size, budget, sense)):
            break
        iteration += 1
        child = _offspring(g, state, rng)
        result = evaluator.evaluate(child)
        previous = current
        if _accepts(result, current, sense):
            state, current = child, result
            if current.feasible:
                if evals_to_feasible is None:
                    evals_to_feasible, first_size = evaluator.evaluations, current.size
                if _better_size(current.size, best_size, sense):
                    best_size, best_bits = current.size, state.bits.copy()
        if observer is not None:
            observer(iteration, previous, current)

    return TrialRecord(
        seed=seed,
        problem=str(p),
        algorithm=Algorithm.EA.value,
        n=g.n,
        m=g.m,
        evals_to_feasible=evals_to_feasible,
        evals_total=evaluator.evaluations,
        best_feasible_size=best_size,
        first_feasible_size=first_size,
        best_solution=None if best_bits is None else str(Solution(best_bits)),
        wall_time=time.perf_counter() - start,
    )


def gsemo(
    g: Graph,
    p: Problem,
    budget: RunBudget,
    seed: int,
    audit_every: int | None = None,
) -> TrialRecord:
    """
    GSEMO: el archivo parte con una solución uniforme; en cada iteración se elige un miembro al azar,
    se muta y el hijo entra si ningún miembro lo domina débilmente (los que él domina se eliminan).
    """
    _check_graph(g, p)
    start = time.perf_counter()
    if audit_every is None:
        audit_every = 1 if settings.audit_archive else ARCHIVE_AUDIT_EVERY
    rng = make_rng(seed)
    evaluator = Evaluator(g, p, bi_objective=True)
    sense = p.sense
    archive = ParetoArchive(sense)

    evals_to_feasible = first_size = evals_to_empty = None

    def _register(result: Evaluation):
        nonlocal evals_to_feasible, first_size, evals_to_empty
        if result.feasible and evals_to_feasible is None:
            evals_to_feasible, first_size = evaluator.evaluations, result.size
        if result.size == 0 and evals_to_empty is None:
            evals_to_empty = evaluator.evaluations

    def _best_feasible():
        feasible = [(e.size, s) for s, e in archive.entries if e.feasible]
        if not feasible:
            return None, None
        pick = min if sense is Sense.MINIMIZE else max
        size, state = pick(feasible, key=lambda item: item[0])
        return size, state

    initial = _random_state(g, rng)
    result = evaluator.evaluate(initial)
    archive.offer(initial, result)
    _register(result)

    watch_stop = budget.stop_when_feasible or budget.target is not None
    iteration = 0
    while evaluator.evaluations < budget.max_evaluations:
        if watch_stop:
            best_size, _ = _best_feasible()
            if best_size is not None and (budget.stop_when_feasible or _target_reached(best_size, budget, sense)):
                break
        iteration += 1
        parent = archive.select(rng)
        child = _offspring(g, parent, rng)
        result = evaluator.evaluate(child)
        if archive.offer(child, result):
            _register(result)
        if iteration % audit_every == 0:
            archive.check_invariants(g.n)

    archive.check_invariants(g.n)
    best_size, best_state = _best_feasible()
    return TrialRecord(
        seed=seed,
        problem=str(p),
        algorithm=Algorithm.GSEMO.value,
        n=g.n,
        m=g.m,
        evals_to_feasible=evals_to_feasible,
        evals_total=evaluator.evaluations,
        best_feasible_size=best_size,
        first_feasible_size=first_size,
        evals_to_empty=evals_to_empty,
        best_solution=None if best_state is None else str(best_state.solution()),
        archive_snapshot=[tuple(v) for v in archive.vectors()],
        wall_time=time.perf_counter() - start,
    )


def run_trial(g: Graph, p: Problem, algorithm: Algorithm, budget: RunBudget, seed: int) -> TrialRecord:
    if algorithm is Algorithm.EA:
        return one_plus_one_ea(g, p, budget, seed)
    return gsemo(g, p, budget, seed)


def _run_trial_args(args) -> TrialRecord:
    return run_trial(*args)


def run_trials(
    g: Graph,
    p: Problem,
    algorithm: Algorithm,
    budget: RunBudget,
    seeds: Sequence[int],
    workers: int | None = None,
) -> list[TrialRecord]:
    """Una corrida por semilla, en el orden de `seeds`; el resultado no depende de la cantidad de workers."""
    if len(set(seeds)) != len(seeds):
        raise UsageError("Las semillas deben ser distintas.")
    workers = settings.workers if workers is None else workers
    jobs = [(g, p, algorithm, budget, seed) for seed in seeds]
    logger.debug("run_trials: %d corridas, %d workers", len(jobs), workers)
    if workers <= 1 or len(jobs) <= 1:
        return [_run_trial_args(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_run_trial_args, jobs))
