import json
from pathlib import Path
from typing import Optional

from src.core.generators import load_edge_list
from src.core.graph import Graph
from src.core.rng import generator_id
from src.errors import ParseError
from src.models import GenSpec


class GraphCRUD:
    """Persistencia de grafos: JSON con objeto "meta" y listas de aristas en texto."""

    @staticmethod
    def to_document(graph: Graph, spec: Optional[GenSpec] = None) -> dict:
        meta = {"generator-id": generator_id()}
        if spec is not None:
            meta.update({"model": spec.model, "params": spec.params(), "seed": spec.seed})
        return {"meta": meta, **graph.to_dict()}

    @staticmethod
    def dumps(graph: Graph, spec: Optional[GenSpec] = None) -> str:
        # Claves ordenadas: mismos parámetros -> mismos bytes
        return json.dumps(GraphCRUD.to_document(graph, spec), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def save_json(path: str, graph: Graph, spec: Optional[GenSpec] = None):
        Path(path).write_text(GraphCRUD.dumps(graph, spec), encoding="utf-8")

    @staticmethod
    def load_json(path: str) -> tuple[Graph, dict]:
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ParseError(f"JSON inválido en {path}: {e.msg}", e.lineno)
        except UnicodeDecodeError as e:
            raise ParseError(f"{path} no es texto UTF-8 válido (byte {e.start}).")
        if not isinstance(document, dict) or "n" not in document or "edges" not in document:
            raise ParseError(f"{path} no contiene las claves 'n' y 'edges'.")
        try:
            n = int(document["n"])
        except (TypeError, ValueError):
            raise ParseError(f"{path}: 'n' debe ser un entero.")
        try:
            edges = [(int(u), int(v)) for u, v in document["edges"]]
        except (TypeError, ValueError):
            raise ParseError(f"{path}: cada arista debe ser un par de enteros.")
        return Graph(n, edges), document.get("meta", {})

    @staticmethod
    def save_edge_list(path: str, graph: Graph):
        lines = [f"# n={graph.n} m={graph.m}"] + [f"{u} {v}" for u, v in graph.edges]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @staticmethod
    def save(path: str, graph: Graph, spec: Optional[GenSpec] = None):
        """Despacha por extensión: .json con metadatos, cualquier otra como lista de aristas."""
        if Path(path).suffix.lower() == ".json":
            GraphCRUD.save_json(path, graph, spec)
        else:
            GraphCRUD.save_edge_list(path, graph)

    @staticmethod
    def load(path: str) -> Graph:
        """Despacha por extensión: .json o lista de aristas."""
        if Path(path).suffix.lower() == ".json":
            graph, _ = GraphCRUD.load_json(path)
            return graph
        return load_edge_list(path)
