import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

from safesets.graph import Graph

sys.path.insert(0, str(Path(__file__).parent))

# Exponential-time solver calls make per-example deadlines meaningless.
settings.register_profile("safesets", deadline=None)
settings.load_profile("safesets")


@st.composite
def connected_graphs(draw, min_order=1, max_order=8):
    """Random spanning tree plus extra edges: always connected."""
    n = draw(st.integers(min_order, max_order))
    edges = set()
    for v in range(1, n):
        edges.add((draw(st.integers(0, v - 1)), v))
    extras = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            max_size=2 * n,
        )
    )
    for u, v in extras:
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))


@st.composite
def arbitrary_graphs(draw, min_order=1, max_order=8):
    n = draw(st.integers(min_order, max_order))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [e for e in pairs if draw(st.booleans())]
    return Graph.from_edges(n, edges)


def weight_lists(n, max_value=9):
    """Mixed integer and small-fraction weights of length n."""
    value = st.one_of(
        st.integers(0, max_value).map(Fraction),
        st.fractions(min_value=0, max_value=max_value, max_denominator=4),
    )
    return st.lists(value, min_size=n, max_size=n).map(tuple)


def positive_int_weights(n, max_value=20):
    return st.lists(st.integers(1, max_value).map(Fraction), min_size=n, max_size=n).map(
        tuple
    )
