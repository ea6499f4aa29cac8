"""Shared fixtures.  The expensive objects (the bundled context, its full
verification report, the three-round kernel run, the big randomized
suite) are computed once per session and reused everywhere."""

import pytest
from hypothesis import HealthCheck, settings

from lndkit import builtin_context, kernel_compute, random_suite, verify_paper

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def context():
    return builtin_context()


@pytest.fixture(scope="session")
def report():
    return verify_paper()


@pytest.fixture(scope="session")
def growth3(context):
    # three rounds of the non-stabilizing kernel computation
    return kernel_compute(context.derivation, context.kernel_slice, 3)


@pytest.fixture(scope="session")
def random_report():
    return random_suite(1, 1000)
