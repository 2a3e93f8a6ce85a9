from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from hyperchord.graph import MetricGraph

lengths = st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2), Fraction(1, 3)])


@st.composite
def graphs(draw, min_nodes=2, max_nodes=7, unit=False, max_extra=6):
    """Connected graphs: a random spanning tree plus a few extra edges."""
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = {}
    for i in range(1, n):
        pairs[(draw(st.integers(0, i - 1)), i)] = None
    for _ in range(draw(st.integers(0, max_extra))):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        if a != b:
            pairs[(min(a, b), max(a, b))] = None
    edges = [(a, b, Fraction(1) if unit else draw(lengths)) for a, b in pairs]
    return MetricGraph(edges, list(range(n)))


@st.composite
def cyclic_graphs(draw, max_nodes=7, unit=False):
    """Graphs with at least one cycle: an n-cycle plus random chords and pendants."""
    n = draw(st.integers(3, max_nodes))
    pairs = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i): None for i in range(n)}
    for _ in range(draw(st.integers(0, 4))):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        if a != b:
            pairs[(min(a, b), max(a, b))] = None
    extra = draw(st.integers(0, 2))
    for t in range(extra):
        pairs[(draw(st.integers(0, n - 1 + t)), n + t)] = None
    edges = [(a, b, Fraction(1) if unit else draw(lengths)) for a, b in pairs]
    return MetricGraph(edges, list(range(n + extra)))
