import json
import os

import pytest
from hypothesis import settings

from jetvar.expr import JetSpace, World, parse

settings.register_profile("jetvar", deadline=None, max_examples=25)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "jetvar"))


@pytest.fixture
def plane():
    """J(R^2, R): base (x1, x2), boundary x2 = 0."""
    return JetSpace(2, 1)


@pytest.fixture
def line():
    return JetSpace(1, 1)


@pytest.fixture
def P(plane):
    """Parse in the interior world of the plane."""

    def _parse(text, world=World.INTERIOR):
        return parse(text, plane, world)

    return _parse


@pytest.fixture
def write_problem(tmp_path):
    """Write a problem dict to a JSON file and return its path."""

    def _write(payload, name="problem.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return _write
