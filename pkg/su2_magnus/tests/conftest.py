import numpy as np
import pytest
from dotenv import find_dotenv, load_dotenv

from su2_magnus.settings import get_settings
from su2_magnus.su2 import AngleAxis


@pytest.fixture(scope="session")
def settings():
    """
    Numerical settings, with overrides from a local .env file
    """
    load_dotenv(find_dotenv())
    get_settings.cache_clear()
    return get_settings()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_elements(rng):
    def draw(count: int):
        elements = []
        for _ in range(count):
            axis = rng.normal(size=3)
            elements.append(AngleAxis.from_rotation(float(rng.uniform(0, np.pi)), axis))
        return elements

    return draw
