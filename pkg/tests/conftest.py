import pytest

from pongalg.config import Settings
from pongalg.store import ResultCache
from pongalg.strands import PongData, parse_pong


@pytest.fixture
def two_strand():
    """The m=4 generator with weight (1,1,1/2,0) and two crossings."""
    return parse_pong("m=4 k=2 ((1,-2),(2,1))")


@pytest.fixture
def bounce():
    """X_{0,1} in P(3,1): one strand reflected off the bottom wall."""
    return PongData(3, (1,), (0,))


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def cache():
    c = ResultCache()
    yield c
    c.close()


@pytest.fixture
def file_settings(tmp_path):
    return Settings(cache_dir=tmp_path / "cache")
