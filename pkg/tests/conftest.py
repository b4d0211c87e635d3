import mpmath
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")


@pytest.fixture
def mp40():
    """mpmath at 40 significant digits for oracle values."""
    with mpmath.workdps(40):
        yield mpmath
