import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def wg():
    from threepage.fixtures import WG

    return WG


@pytest.fixture(scope="session")
def wg_printed():
    from threepage.fixtures import WG_PRINTED

    return WG_PRINTED
