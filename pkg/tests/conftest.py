import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from interval_lengths.poset import WeightedPoset, from_relations

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def posets(draw, min_size=0, max_size=7):
    """Random labeled posets: a random DAG on a shuffled vertex order."""
    n = draw(st.integers(min_size, max_size))
    order = draw(st.permutations(range(n)))
    names = [f"p{i}" for i in range(n)]
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                pairs.append((names[order[i]], names[order[j]]))
    return from_relations(names, pairs)


@st.composite
def interval_orders(draw, min_size=1, max_size=7):
    """Orders read off random closed intervals; never contain a 2+2."""
    n = draw(st.integers(min_size, max_size))
    names = [f"v{i}" for i in range(n)]
    ivs = []
    for _ in range(n):
        left = Fraction(draw(st.integers(0, 4 * n)), 2)
        ivs.append((left, left + Fraction(draw(st.integers(0, 6)), 2)))
    pairs = [(names[i], names[j]) for i in range(n) for j in range(n) if ivs[i][1] < ivs[j][0]]
    return from_relations(names, pairs, mode="full")


@st.composite
def weighted_interval_orders(draw, lengths=(1, 2), min_size=1, max_size=7):
    P = draw(interval_orders(min_size=min_size, max_size=max_size))
    return WeightedPoset(P, {x: draw(st.sampled_from(lengths)) for x in P.elements})


@pytest.fixture
def two_plus_two():
    return from_relations("abxy", [("a", "b"), ("x", "y")])


@pytest.fixture
def three_plus_one():
    return from_relations("abcx", [("a", "b"), ("b", "c")])


@pytest.fixture
def labeled_three_plus_one():
    """The 3+1 labeled ``b < y < a`` with ``x`` incomparable."""
    return from_relations(["a", "y", "b", "x"], [("b", "y"), ("y", "a")])


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance PASS/FAIL lines after the test report."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
