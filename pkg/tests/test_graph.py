import networkx as nx
import numpy as np
import pytest

from helpers import atlas_graphs, to_networkx
from src.core.graph import (
    DominationState,
    Graph,
    Solution,
    apply_flip,
    conflict_count,
    degree,
    selected_component_count,
    uncovered_edge_count,
    undominated_count,
)
from src.errors import UsageError


def S(text):
    return Solution.from_string(text)


class TestGraph:
    def test_invariantes_basicos(self, star4):
        assert star4.n == 5 and star4.m == 4
        assert int(star4.degree.sum()) == 2 * star4.m
        for v, adj in enumerate(star4.adjacency):
            assert all(v in star4.adjacency[u] for u in adj)

    def test_duplicados_colapsan(self):
        g = Graph(2, [(1, 0), (0, 1)])
        assert g.edges == ((0, 1),)

    def test_bucle_rechazado(self):
        with pytest.raises(UsageError):
            Graph(2, [(1, 1)])

    def test_arista_fuera_de_rango(self):
        with pytest.raises(UsageError):
            Graph(2, [(0, 2)])

    def test_conectividad(self, p3):
        assert p3.is_connected
        assert not Graph.disjoint_union(p3, p3).is_connected
        assert Graph(1, []).is_connected

    def test_conectividad_coincide_con_networkx(self):
        for g in atlas_graphs(1, 5):
            assert g.is_connected == nx.is_connected(to_networkx(g))


class TestDegree:
    def test_camino(self, p3):
        assert degree(p3, 1) == 2
        assert degree(p3, 0) == 1

    def test_centro_estrella(self, star4):
        assert degree(star4, 0) == 4

    def test_fuera_de_rango(self, p3):
        with pytest.raises(UsageError):
            degree(p3, 3)


class TestCounts:
    @pytest.mark.parametrize("bits, expected", [("010", 0), ("000", 3), ("100", 1)])
    def test_undominated_p3(self, p3, bits, expected):
        assert undominated_count(p3, S(bits)) == expected

    def test_undominated_largo_incorrecto(self, p3):
        with pytest.raises(UsageError):
            undominated_count(p3, S("01"))

    def test_todos_seleccionados_dominan(self, star4):
        assert undominated_count(star4, Solution.ones(5)) == 0

    def test_uncovered(self, p3, triangle):
        assert uncovered_edge_count(p3, S("010")) == 0
        assert uncovered_edge_count(triangle, S("000")) == 3
        assert uncovered_edge_count(triangle, S("100")) == 1

    def test_componentes(self, p3):
        assert selected_component_count(p3, S("101")) == 2
        assert selected_component_count(p3, S("111")) == 1
        assert selected_component_count(p3, S("000")) == 0

    def test_conflictos(self, triangle):
        assert conflict_count(triangle, S("110")) == 2
        assert conflict_count(triangle, S("000")) == 0
        assert conflict_count(triangle, S("111")) == 6

    def test_contra_networkx(self):
        rng = np.random.default_rng(3)
        h = nx.gnp_random_graph(20, 0.15, seed=11)
        g = Graph(20, h.edges())
        for _ in range(50):
            x = Solution(rng.integers(0, 2, size=20))
            chosen = set(x.indices())
            dominated = set(chosen).union(*(set(h[v]) for v in chosen))
            assert undominated_count(g, x) == 20 - len(dominated)
            expected = nx.number_connected_components(h.subgraph(chosen)) if chosen else 0
            assert selected_component_count(g, x) == expected
            assert selected_component_count(g, x) <= x.size
            assert conflict_count(g, x) == 2 * h.subgraph(chosen).number_of_edges()


class TestDominationState:
    def test_flip_centro(self, p3):
        state = DominationState.from_solution(p3, S("000"))
        assert state.undominated == 3
        assert apply_flip(state, p3, 1).undominated == 0
        assert state.undominated == 3

    def test_flip_extremo_sigue_dominado(self, p3):
        state = DominationState.from_solution(p3, S("010"))
        assert apply_flip(state, p3, 0).undominated == 0

    def test_involucion(self, p3):
        state = DominationState.from_solution(p3, S("100"))
        back = apply_flip(apply_flip(state, p3, 2), p3, 2)
        assert np.array_equal(back.bits, state.bits)
        assert np.array_equal(back.cover_count, state.cover_count)
        assert back.undominated == state.undominated

    def test_incremental_igual_a_recalculo(self):
        rng = np.random.default_rng(2024)
        for trial in range(1000):
            n = int(rng.integers(1, 65))
            h = nx.gnp_random_graph(n, float(rng.uniform(0.02, 0.3)), seed=trial)
            g = Graph(n, h.edges())
            state = DominationState.from_solution(g, rng.integers(0, 2, size=n))
            for v in rng.integers(0, n, size=10).tolist():
                state = apply_flip(state, g, v)
                assert state.undominated == undominated_count(g, state.bits)
