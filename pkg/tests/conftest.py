import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "det",
    max_examples=40,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
