import itertools
import os

import pytest
from hypothesis import HealthCheck, settings

from affcanon.affine_root import build_h, cartan_datum

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def a2():
    return build_h(cartan_datum("A", 2))


@pytest.fixture(scope="session")
def a3():
    return build_h(cartan_datum("A", 3))


def weights_up_to(size, total):
    """All nu in Z_{>=0}^size with 1 <= |nu| <= total."""
    return [nu for t in range(1, total + 1)
            for nu in itertools.product(range(t + 1), repeat=size) if sum(nu) == t]
