import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from util import G1_EDGES, G2_EDGES, make_db, make_graph  # noqa: E402


@pytest.fixture(scope="session")
def g1():
    return make_graph(G1_EDGES)


@pytest.fixture(scope="session")
def g1_db():
    return make_db(G1_EDGES)


@pytest.fixture(scope="session")
def g2():
    return make_graph(G2_EDGES)


@pytest.fixture(scope="session")
def nine_upstream():
    """Upstream state with n1 = 9 around the removable parent edge a -> p:
    a brings {a, a1, a2} uniquely; x and its five parents stay either way."""
    edges = [("a", "p"), ("x", "p"),
             ("a1", "a"), ("a2", "a"),
             ("x1", "x"), ("x2", "x"), ("x3", "x"), ("x4", "x"), ("x5", "x")]
    return make_graph(edges)
