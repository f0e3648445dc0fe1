import hypothesis
import numpy as np
import pytest

from pareto_forge.core import Solution

hypothesis.settings.register_profile("fast", max_examples=10)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.load_profile("ci")


def make_solutions(F, decisions=None):
    F = np.asarray(F, dtype=float)
    if decisions is None:
        decisions = np.zeros((len(F), 1))
    return [Solution(np.asarray(x, dtype=float), f.copy()) for x, f in zip(decisions, F)]


@pytest.fixture
def sols():
    return make_solutions
