import pytest

from src.core.graph import Graph


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    # Los tests no dependen de la configuración del entorno de quien los corre
    for key in ("PLBEA_WORKERS", "PLBEA_EXACT_LIMIT", "PLBEA_AUDIT", "PLBEA_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def p3():
    return Graph.path(3)


@pytest.fixture
def p5():
    return Graph.path(5)


@pytest.fixture
def triangle():
    return Graph.complete(3)


@pytest.fixture
def star4():
    return Graph.star(4)


@pytest.fixture
def k2():
    return Graph.complete(2)


@pytest.fixture
def single():
    return Graph(1, [])
