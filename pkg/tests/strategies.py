"""Hypothesis strategies for small graphs and morphism-shaped data."""

from __future__ import annotations

from hypothesis import strategies as st

from dpo.graph import Graph, graph

NODE_LABELS = ("a", "b")
EDGE_LABELS = ("x", "y")


@st.composite
def graphs(draw, max_nodes: int = 4, max_edges: int = 4) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_nodes))
    nodes = {v: draw(st.sampled_from(NODE_LABELS)) for v in range(n)}
    edges = {}
    if n:
        m = draw(st.integers(min_value=0, max_value=max_edges))
        for e in range(m):
            edges[e] = (
                draw(st.integers(0, n - 1)),
                draw(st.integers(0, n - 1)),
                draw(st.sampled_from(EDGE_LABELS)),
            )
    return graph(nodes, edges)
