import pytest
from hypothesis import HealthCheck, settings
from numpy.random import default_rng

from app.models.pencil import Pencil, StructureTag
from app.services.canon import CanonService

settings.register_profile(
    "pencil-lab",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pencil-lab")


@pytest.fixture
def canon():
    return CanonService()


@pytest.fixture
def rng():
    return default_rng(1234)


@pytest.fixture
def example_pencil():
    """[[0, lambda - 1], [lambda - 1, 0]]."""
    return Pencil([[0, -1], [-1, 0]], [[0, 1], [1, 0]], StructureTag.HERMITIAN)
