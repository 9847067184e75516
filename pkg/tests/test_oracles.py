from itertools import combinations

import pytest

from helpers import all_solutions, atlas_graphs, pa_graph
from src.core.fitness import is_feasible
from src.core.graph import Graph, Solution, conflict_count, undominated_count
from src.core.oracles import (
    check_witness,
    exact_solve,
    greedy_cds,
    greedy_matching,
    greedy_mds,
    greedy_mis,
    is_3_local_optimum,
    size_bounds,
    verify_greedy_cds_steps,
    verify_greedy_mds_recurrence,
    verify_greedy_mis_bound,
)
from src.errors import InstanceTooLargeError, UsageError
from src.models import Problem, ProblemKind

MDS, MVC, CDS, MIS = (Problem(kind) for kind in ProblemKind)


def brute_force(g, problem):
    sizes = [x.size for x in all_solutions(g.n) if is_feasible(g, x, problem)]
    return max(sizes) if problem is MIS else min(sizes)


def brute_force_3_local(g, x):
    """Busca algún intercambio (U, T) con |U| + |T| <= 3 que agrande el conjunto independiente."""
    selected = set(x.indices())
    outside = [v for v in range(g.n) if v not in selected]
    for size_u in range(0, 2):
        for U in combinations(sorted(selected), size_u):
            for size_t in range(size_u + 1, 4 - size_u):
                for T in combinations(outside, size_t):
                    candidate = Solution.from_indices(g.n, (selected - set(U)) | set(T))
                    if conflict_count(g, candidate) == 0:
                        return False
    return True


class TestExact:
    def test_camino(self, p3):
        assert [exact_solve(p3, p).optimum_size for p in (MDS, MVC, CDS, MIS)] == [1, 1, 1, 2]

    def test_triangulo(self, triangle):
        assert exact_solve(triangle, MDS).optimum_size == 1
        assert exact_solve(triangle, MVC).optimum_size == 2
        assert exact_solve(triangle, MIS).optimum_size == 1

    def test_estrella(self, star4):
        assert exact_solve(star4, MDS).optimum_size == 1
        assert exact_solve(star4, MIS).optimum_size == 4
        assert exact_solve(star4, MDS).witness.indices() == [0]

    def test_camino_p5(self, p5):
        assert exact_solve(p5, MDS).optimum_size == 2
        assert exact_solve(p5, CDS).optimum_size == 3
        assert exact_solve(p5, MIS).optimum_size == 3

    @pytest.mark.parametrize("problem", [MDS, MVC, CDS, MIS])
    def test_coincide_con_fuerza_bruta(self, problem):
        for g in atlas_graphs(1, 6):
            if problem is CDS and not g.is_connected:
                continue
            result = exact_solve(g, problem)
            assert result.method == "exact"
            assert check_witness(g, result)
            assert result.optimum_size == brute_force(g, problem)

    @pytest.mark.slow
    @pytest.mark.parametrize("problem", [MDS, MVC, CDS, MIS])
    def test_coincide_con_fuerza_bruta_aleatorios(self, problem):
        for seed in range(15):
            g = pa_graph(8 + seed % 5, 1 + seed % 3, seed)
            assert exact_solve(g, problem).optimum_size == brute_force(g, problem)

    def test_testigo_mis_es_dominante(self):
        for seed in range(5):
            g = pa_graph(20, 2, seed)
            assert undominated_count(g, exact_solve(g, MIS).witness) == 0

    def test_rechaza_instancias_grandes(self):
        with pytest.raises(InstanceTooLargeError):
            exact_solve(Graph.path(30), MDS)
        with pytest.raises(InstanceTooLargeError):
            exact_solve(Graph.path(10), MDS, limit=5)

    def test_limite_por_entorno(self, monkeypatch, p5):
        monkeypatch.setenv("PLBEA_EXACT_LIMIT", "4")
        with pytest.raises(InstanceTooLargeError):
            exact_solve(p5, MIS)

    def test_cds_desconexo(self):
        with pytest.raises(UsageError):
            exact_solve(Graph.empty(3), CDS)

    def test_pa_mediano(self):
        g = pa_graph(16, 2, 11)
        for problem in (MDS, MVC, CDS, MIS):
            result = exact_solve(g, problem)
            assert check_witness(g, result)
            lower, upper = size_bounds(g, problem)
            assert lower <= result.optimum_size <= upper


class TestGreedy:
    def test_mds_estrella(self, star4):
        result = greedy_mds(star4)
        assert result.witness.indices() == [0]
        assert result.sequence_trace == [{"vertex": 0, "undominated": 0}]

    def test_mds_camino(self, p5):
        result = greedy_mds(p5)
        assert result.witness.indices() == [1, 3]
        assert [step["undominated"] for step in result.sequence_trace] == [2, 0]

    def test_cds_camino(self, p5):
        result = greedy_cds(p5)
        assert result.witness.indices() == [1, 2, 3]
        assert [step["potential"] for step in result.sequence_trace] == [5, 3, 2, 1]

    def test_cds_estrella(self, star4):
        result = greedy_cds(star4)
        assert result.witness.indices() == [0]

    def test_cds_desconexo(self):
        with pytest.raises(UsageError):
            greedy_cds(Graph.empty(2))

    def test_mis(self, star4, triangle):
        assert greedy_mis(star4).witness.indices() == [1, 2, 3, 4]
        assert greedy_mis(triangle).optimum_size == 1

    def test_matching(self, p5):
        assert greedy_matching(p5) == [(0, 1), (2, 3)]

    def test_testigos_factibles(self):
        for g in atlas_graphs(2, 6):
            assert check_witness(g, greedy_mds(g))
            assert check_witness(g, greedy_mis(g))
            if g.is_connected:
                assert check_witness(g, greedy_cds(g))


class TestLocalOptimum:
    def test_camino(self, p3):
        ok, swap = is_3_local_optimum(p3, Solution.from_indices(3, [1]))
        assert not ok and swap == ([1], [0, 2])
        assert is_3_local_optimum(p3, Solution.from_indices(3, [0, 2])) == (True, None)

    def test_triangulo(self, triangle):
        assert is_3_local_optimum(triangle, Solution.from_indices(3, [0]))[0]

    def test_vacio_no_es_optimo(self, p3):
        ok, swap = is_3_local_optimum(p3, Solution.zeros(3))
        assert not ok and swap == ([], [0])

    def test_conflicto(self, triangle):
        with pytest.raises(UsageError):
            is_3_local_optimum(triangle, Solution.from_string("110"))

    def test_coincide_con_fuerza_bruta(self):
        for g in atlas_graphs(1, 6):
            for x in all_solutions(g.n):
                if conflict_count(g, x) == 0:
                    assert is_3_local_optimum(g, x)[0] == brute_force_3_local(g, x)


class TestSizeBounds:
    def test_ejemplos(self, p3, star4):
        assert size_bounds(p3, MDS) == (1, 1)
        assert size_bounds(p3, MVC) == (1, 2)
        assert size_bounds(p3, MIS) == (2, 2)
        assert size_bounds(star4, MVC) == (1, 2)

    def test_encierran_al_optimo(self):
        for g in atlas_graphs(1, 6):
            for problem in (MDS, MVC, CDS, MIS):
                if problem is CDS and not g.is_connected:
                    continue
                lower, upper = size_bounds(g, problem)
                assert lower <= exact_solve(g, problem).optimum_size <= upper


class TestGreedyInequalities:
    def test_recurrencia_mds(self):
        for g in atlas_graphs(1, 6):
            assert verify_greedy_mds_recurrence(g)
        for seed in range(5):
            assert verify_greedy_mds_recurrence(pa_graph(22, 2, seed))

    def test_pasos_cds(self, p5, star4):
        assert verify_greedy_cds_steps(p5) == (True, [])
        assert verify_greedy_cds_steps(star4) == (True, [])

    def test_pasos_cds_sin_exacto(self, p5):
        ok, _ = verify_greedy_cds_steps(p5, limit=2)
        assert ok

    @pytest.mark.slow
    def test_pasos_cds_en_grafos_conexos(self):
        graphs = [g for g in atlas_graphs(2, 7) if g.is_connected]
        graphs += [pa_graph(n, 1 + n % 3, n) for n in range(8, 17)]
        for g in graphs:
            ok, failures = verify_greedy_cds_steps(g)
            assert ok, (g.edges, failures)

    def test_cota_mis(self):
        for g in atlas_graphs(1, 6):
            assert verify_greedy_mis_bound(g)
        for seed in range(5):
            assert verify_greedy_mis_bound(pa_graph(100, 3, seed))
