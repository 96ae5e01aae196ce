import pytest
from fastapi.testclient import TestClient

from app.core.service import cross_polytope, cube, halfcube


@pytest.fixture
def client():
    from main import app
    return TestClient(app)


@pytest.fixture
def h4():
    return halfcube(4)


@pytest.fixture
def h5():
    return halfcube(5)


@pytest.fixture
def cube3():
    return cube(3)


@pytest.fixture
def octahedron():
    """Delta(3,{1,2})"""
    return cross_polytope(3)
