import itertools

import networkx as nx

from src.core.generators import gen_preferential_attachment
from src.core.graph import Graph, Solution
from src.models import GenSpec


def from_networkx(nx_graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(nx_graph.nodes()))}
    return Graph(len(mapping), [(mapping[u], mapping[v]) for u, v in nx_graph.edges()])


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def atlas_graphs(min_n: int, max_n: int) -> list[Graph]:
    """Todos los grafos no isomorfos con min_n..max_n vértices (atlas de networkx, n <= 7)."""
    return [from_networkx(h) for h in nx.graph_atlas_g() if min_n <= h.number_of_nodes() <= max_n]


def pa_graph(n: int, attach_m: int, seed: int) -> Graph:
    return gen_preferential_attachment(GenSpec(model="pa", n=n, attach_m=attach_m, seed=seed))


def all_solutions(n: int):
    for bits in itertools.product((0, 1), repeat=n):
        yield Solution(bits)
