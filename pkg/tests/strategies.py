"""Hypothesis strategies shared by the test modules."""

import hypothesis.strategies as st

from sigchoose.core import build_signed_graph


@st.composite
def signed_graphs(draw, max_n=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=len(chosen), max_size=len(chosen)))
    return build_signed_graph(range(n), [(u, v, s) for (u, v), s in zip(chosen, signs)])


@st.composite
def graphs_with_lists(draw, max_n=7, k_max=3, universe=(-2, -1, 0, 1, 2)):
    g = draw(signed_graphs(max_n=max_n))
    lists = {}
    for v in g.vertices:
        lists[v] = frozenset(draw(st.lists(st.sampled_from(universe), min_size=1, max_size=k_max, unique=True)))
    return g, lists


@st.composite
def colorings(draw, g, universe=(-2, -1, 0, 1, 2)):
    return {v: draw(st.sampled_from(universe)) for v in g.vertices}
