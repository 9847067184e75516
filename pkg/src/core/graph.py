"""
Grafo no dirigido simple, vector solución y las consultas de dominación,
cobertura y conectividad que usan todas las funciones de fitness.
Los vértices se indexan desde 0.
"""
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.errors import UsageError


class Graph:
    """
    Grafo inmutable: n, aristas (u < v, orden lexicográfico), listas de adyacencia ordenadas y grados.
    Se puede compartir entre corridas concurrentes.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise UsageError(f"n debe ser >= 0, se recibió {n}.")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise UsageError(f"Bucle no permitido en el vértice {u}.")
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"Arista ({u}, {v}) fuera de rango para n={n}.")
            normalized.add((min(u, v), max(u, v)))

        self._n = n
        self._edges = tuple(sorted(normalized))
        neighbors = [[] for _ in range(n)]
        for u, v in self._edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        self._adjacency = tuple(tuple(sorted(adj)) for adj in neighbors)
        degree = np.fromiter((len(adj) for adj in self._adjacency), dtype=np.int64, count=n)
        degree.flags.writeable = False
        self._degree = degree

    # --- Constructores de grafos con nombre ---
    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """Estrella K_{1,leaves}; el centro es el vértice 0."""
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [])

    @classmethod
    def disjoint_union(cls, *graphs: "Graph") -> "Graph":
        offset, edges = 0, []
        for g in graphs:
            edges.extend((u + offset, v + offset) for u, v in g.edges)
            offset += g.n
        return cls(offset, edges)

    # --- Propiedades ---
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adjacency

    @property
    def degree(self) -> np.ndarray:
        return self._degree

    @property
    def max_degree(self) -> int:
        return int(self._degree.max()) if self._n else 0

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if not self._edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        arr = np.asarray(self._edges, dtype=np.int64)
        return arr[:, 0].copy(), arr[:, 1].copy()

    @cached_property
    def matrix(self) -> csr_matrix:
        """Matriz de adyacencia simétrica (enteros) en formato CSR."""
        eu, ev = self.edge_arrays
        rows = np.concatenate([eu, ev])
        cols = np.concatenate([ev, eu])
        data = np.ones(len(rows), dtype=np.int64)
        return csr_matrix((data, (rows, cols)), shape=(self._n, self._n))

    @cached_property
    def closed_neighborhoods(self) -> tuple[np.ndarray, ...]:
        return tuple(np.array((v,) + adj, dtype=np.int64) for v, adj in enumerate(self._adjacency))

    @cached_property
    def is_connected(self) -> bool:
        if self._n <= 1:
            return self._n == 1
        count, _ = connected_components(self.matrix, directed=False)
        return count == 1

    def check_vertex(self, v: int) -> int:
        if not 0 <= v < self._n:
            raise UsageError(f"Vértice {v} fuera de rango [0, {self._n}).")
        return int(v)

    def to_dict(self) -> dict:
        return {"n": self._n, "edges": [list(e) for e in self._edges]}

    def __eq__(self, other):
        return isinstance(other, Graph) and self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"<Graph(n={self._n}, m={self.m})>"


class Solution:
    """Vector de bits de largo n (x en {0,1}^n). Inmutable una vez construido."""

    __slots__ = ("_bits",)

    def __init__(self, bits):
        arr = np.array(bits, dtype=np.uint8).reshape(-1)
        if arr.size and arr.max() > 1:
            raise UsageError("Una solución solo puede contener 0 y 1.")
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def from_string(cls, text: str) -> "Solution":
        return cls([int(ch) for ch in text.strip()])

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "Solution":
        bits = np.zeros(n, dtype=np.uint8)
        bits[list(indices)] = 1
        return cls(bits)

    @classmethod
    def zeros(cls, n: int) -> "Solution":
        return cls(np.zeros(n, dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> "Solution":
        return cls(np.ones(n, dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def n(self) -> int:
        return int(self._bits.size)

    @property
    def size(self) -> int:
        """|x|_1"""
        return int(self._bits.sum())

    def indices(self) -> list[int]:
        return np.flatnonzero(self._bits).tolist()

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Solution) and np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash(self._bits.tobytes())

    def __str__(self):
        return "".join("1" if b else "0" for b in self._bits)

    def __repr__(self):
        return f"<Solution({self})>"


def _bits_of(g: Graph, x) -> np.ndarray:
    bits = x.bits if isinstance(x, Solution) else np.asarray(x, dtype=np.uint8)
    if bits.size != g.n:
        raise UsageError(f"La solución tiene largo {bits.size} y el grafo n={g.n}.")
    return bits


def degree(g: Graph, v: int) -> int:
    return int(g.degree[g.check_vertex(v)])


def cover_counts(g: Graph, x) -> np.ndarray:
    """Para cada vértice, cuántos seleccionados hay en su vecindad cerrada."""
    bits = _bits_of(g, x).astype(np.int64)
    return bits + g.matrix @ bits


def undominated_count(g: Graph, x) -> int:
    """u(x): vértices sin ningún seleccionado en su vecindad cerrada."""
    return int(np.count_nonzero(cover_counts(g, x) == 0))


def uncovered_edge_count(g: Graph, x) -> int:
    bits = _bits_of(g, x)
    eu, ev = g.edge_arrays
    return int(np.count_nonzero((bits[eu] == 0) & (bits[ev] == 0)))


def selected_component_count(g: Graph, x) -> int:
    """w(x): componentes conexas del subgrafo inducido por los seleccionados; 0 para 0^n."""
    selected = np.flatnonzero(_bits_of(g, x))
    if selected.size == 0:
        return 0
    sub = g.matrix[selected][:, selected]
    count, _ = connected_components(sub, directed=False)
    return int(count)


def conflict_count(g: Graph, x) -> int:
    """Suma de x_i x_j e_ij sobre pares ordenados: 2 por cada arista interna."""
    bits = _bits_of(g, x)
    eu, ev = g.edge_arrays
    return 2 * int(np.count_nonzero((bits[eu] == 1) & (bits[ev] == 1)))


class DominationState:
    """
    Caché incremental de u(x). Mantiene los bits, el conteo de cobertura por vértice
    y la cantidad de vértices no dominados. Es mutable y pertenece a una sola corrida.
    """

    __slots__ = ("bits", "cover_count", "undominated")

    def __init__(self, bits: np.ndarray, cover_count: np.ndarray, undominated: int):
        self.bits = bits
        self.cover_count = cover_count
        self.undominated = undominated

    @classmethod
    def from_solution(cls, g: Graph, x) -> "DominationState":
        bits = np.array(_bits_of(g, x), dtype=np.uint8)
        cover = cover_counts(g, bits)
        return cls(bits, cover, int(np.count_nonzero(cover == 0)))

    def copy(self) -> "DominationState":
        return DominationState(self.bits.copy(), self.cover_count.copy(), self.undominated)

    def flip(self, g: Graph, v: int):
        """Invierte el bit v en el lugar, actualizando la cobertura de N[v]."""
        closed = g.closed_neighborhoods[v]
        before = self.cover_count[closed]
        if self.bits[v]:
            self.bits[v] = 0
            self.cover_count[closed] -= 1
            self.undominated += int(np.count_nonzero(before == 1))
        else:
            self.bits[v] = 1
            self.cover_count[closed] += 1
            self.undominated -= int(np.count_nonzero(before == 0))

    def solution(self) -> Solution:
        return Solution(self.bits)


def apply_flip(state: DominationState, g: Graph, v: int) -> DominationState:
    """Devuelve un estado nuevo con el bit v invertido; el original no se modifica."""
    g.check_vertex(v)
    if state.bits.size != g.n:
        raise UsageError(f"El estado tiene largo {state.bits.size} y el grafo n={g.n}.")
    flipped = state.copy()
    flipped.flip(g, v)
    return flipped
