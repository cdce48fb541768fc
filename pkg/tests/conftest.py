import pytest
from fractions import Fraction

from hypothesis import settings

from explab import graphs

# property tests must behave identically on every run, like everything else
# in this repo; per-test @settings still override max_examples etc.
settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def k4():
    return graphs.gen_complete(4)


@pytest.fixture(scope="session")
def c5():
    return graphs.gen_cycle(5)


@pytest.fixture(scope="session")
def petersen():
    return graphs.gen_petersen()


@pytest.fixture(scope="session")
def h_k4(k4):
    return graphs.edge_vertex_graph(k4)


@pytest.fixture(scope="session")
def h_k8():
    return graphs.edge_vertex_graph(graphs.gen_complete(8))


@pytest.fixture(scope="session")
def standard_alphas():
    return [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)]


@pytest.fixture(scope="session")
def client():
    from fastapi.testclient import TestClient

    from explab.service import app

    return TestClient(app, raise_server_exceptions=False)
