import logging

from src.core.generators import generate
from src.crud.graph_crud import GraphCRUD
from src.errors import PlbEaError, StorageError
from src.models import GenSpec

logger = logging.getLogger(__name__)


class GraphService:
    def generate_graph(self, spec: GenSpec, out: str | None = None) -> tuple[bool, object]:
        """
        Genera el grafo de `spec`. Si hay ruta de salida lo escribe (JSON o lista de aristas según la extensión);
        devuelve (True, (grafo, documento JSON)) o (False, error).
        """
        try:
            graph = generate(spec)
            text = GraphCRUD.dumps(graph, spec)
            if out:
                GraphCRUD.save(out, graph, spec)
                logger.info("Grafo %s guardado en %s (n=%d, m=%d)", spec.model, out, graph.n, graph.m)
            return True, (graph, text)
        except PlbEaError as e:
            return False, e
        except OSError as e:
            logger.error("No se pudo escribir el grafo: %s", e)
            return False, StorageError(f"Error de archivo: {e}")

    def load_graph(self, path: str) -> tuple[bool, object]:
        try:
            return True, GraphCRUD.load(path)
        except PlbEaError as e:
            return False, e
        except OSError as e:
            return False, StorageError(f"No se pudo leer el grafo '{path}': {e}")
