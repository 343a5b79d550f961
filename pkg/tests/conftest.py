import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def default_params():
    from bcsgap.model import build_params

    return build_params()


@pytest.fixture(scope="session")
def eps_params():
    from bcsgap.model import build_params

    return build_params(eps=0.5)
