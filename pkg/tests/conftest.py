# tests/conftest.py

import os

# keep the HTTP tests on the in-process result store
os.environ.setdefault("REDIS_HOST", "")

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "qcalc",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qcalc")


@pytest.fixture
def sample_s() -> Fraction:
    return Fraction(1, 2)
