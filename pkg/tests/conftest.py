"""Shared test fixtures."""

import pytest

from flutelab.dynamics.flows import UnitTangent
from flutelab.geometry.plane import INF, I
from flutelab.surfaces.flute import (
    TwistedDeltaParams,
    UntwistedFluteParams,
    build_twisted_delta,
    build_untwisted,
)


@pytest.fixture(scope="session")
def untwisted():
    """Default untwisted flute: triangular schedule, N = 8."""
    return build_untwisted(UntwistedFluteParams.from_schedule())


@pytest.fixture(scope="session")
def small_untwisted():
    return build_untwisted(UntwistedFluteParams.from_schedule(count=3))


@pytest.fixture(scope="session")
def delta3():
    """Delta family at delta = 3 with six generators."""
    return build_twisted_delta(TwistedDeltaParams(delta=3.0, count=6))


@pytest.fixture(scope="session")
def delta3_deep():
    return build_twisted_delta(TwistedDeltaParams(delta=3.0, count=14))


@pytest.fixture
def standard_vector():
    """The unit tangent vector at i pointing to infinity."""
    return UnitTangent(I, INF)
