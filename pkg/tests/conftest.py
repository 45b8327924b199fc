from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from heunzeros.families import FamilyKind, RecurrenceSpec

# determinism across runs and machines
settings.register_profile(
    "repo",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def heun_spec():
    return RecurrenceSpec(kind=FamilyKind.HEUN, gamma="1/2", delta="1/2",
                          s="1/100", alpha="3/2", beta="-1")


@pytest.fixture
def confluent_spec():
    return RecurrenceSpec(kind=FamilyKind.CONFLUENT, gamma="1/2",
                          delta="1/2", s="-1/100", alpha=5)


@pytest.fixture
def reduced_spec():
    return RecurrenceSpec(kind=FamilyKind.REDUCED, gamma="1/2", delta="1/2",
                          s=2)


@pytest.fixture
def generic_specs():
    """Awkward parameter values, one spec per family."""
    return [
        RecurrenceSpec(kind=FamilyKind.HEUN, gamma="2/3", delta="3/4",
                       s="1/5", alpha="1/3", beta="5/7"),
        RecurrenceSpec(kind=FamilyKind.CONFLUENT, gamma="3/5", delta="7/4",
                       s=2, alpha="-1/3"),
        RecurrenceSpec(kind=FamilyKind.REDUCED, gamma="5/4", delta="2/7",
                       s="-3/2"),
    ]


def rational(num, den=1):
    return Fraction(num, den)
