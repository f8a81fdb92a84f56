import random

import pytest
from hypothesis import strategies as st

import chipfire as cf


@pytest.fixture
def dhar5():
    return cf.load_fixture("dhar5")


@pytest.fixture
def weighted_binary():
    return cf.load_fixture("weighted-binary")


def binary_graph(genus):
    return cf.Graph(["v1", "v2"], [("v1", "v2", genus + 1)])


@st.composite
def connected_graphs(draw, max_vertices=5, max_extra=4, max_weight=2, loops=True):
    n = draw(st.integers(1, max_vertices))
    ids = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        edges.append((ids[draw(st.integers(0, i - 1))], ids[i]))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    for i, j in draw(st.lists(pairs, max_size=max_extra)):
        if i == j and not loops:
            continue
        edges.append((ids[i], ids[j]))
    weights = [draw(st.integers(0, max_weight)) for _ in ids]
    return cf.Graph(list(zip(ids, weights)), edges)


@st.composite
def graph_with_divisor(draw, max_vertices=5, max_extra=4, max_weight=2, lo=-3, hi=4, loops=True):
    graph = draw(connected_graphs(max_vertices, max_extra, max_weight, loops))
    values = [draw(st.integers(lo, hi)) for _ in graph.vertex_ids]
    return graph, cf.Divisor(graph, values)


def seeded_instances(seed, count, *, max_vertices=6, max_edges=10, max_weight=2, max_value=3):
    """Deterministic (graph, divisor) stream for the heavier randomized loops."""
    rng = random.Random(seed)
    for _ in range(count):
        graph = cf.random_connected_graph(rng, max_vertices, max_edges, max_weight)
        yield rng, graph, cf.random_divisor(rng, graph, max_value)
