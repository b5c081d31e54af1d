import pytest

from llcurves import dumbbell_graph, k4_graph, theta_graph


@pytest.fixture(scope="session")
def theta():
    return theta_graph()


@pytest.fixture(scope="session")
def dumbbell():
    return dumbbell_graph()


@pytest.fixture(scope="session")
def k4():
    return k4_graph()
