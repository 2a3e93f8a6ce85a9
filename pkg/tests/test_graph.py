from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperchord.families import gen_grid, gen_mod8, gen_quadrant
from hyperchord.graph import (
    DisconnectedGraph,
    DuplicateEdge,
    EdgePoint,
    GraphError,
    InvalidPoint,
    NonPositiveLength,
    SelfLoop,
    VertexPoint,
    all_pairs_distances,
    build_graph,
    count_geodesics,
    distance_points,
    format_graph,
    geodesics_between,
    is_geodesic,
    parse_graph,
)
from oracles import floyd_warshall, point_distance, random_point
from strategies import graphs


def cycle(n):
    return build_graph([(i, (i + 1) % n, 1) for i in range(n)])


def test_build_cycle():
    g = cycle(6)
    assert (g.n, g.m) == (6, 6)
    assert g.vertices == tuple(range(6))


def test_vertex_order_is_input_order():
    g = build_graph([("b", "a", 1), ("a", "c", 2)])
    assert g.vertices == ("b", "a", "c")


@pytest.mark.parametrize(
    "edges, exc",
    [
        ([(0, 1, 0)], NonPositiveLength),
        ([(0, 1, -1)], NonPositiveLength),
        ([(0, 1, 1), (1, 0, 2)], DuplicateEdge),
        ([(0, 0, 1)], SelfLoop),
        ([(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)], DisconnectedGraph),
    ],
)
def test_construction_errors(edges, exc):
    with pytest.raises(exc):
        build_graph(edges)


def test_float_lengths_rejected():
    with pytest.raises(TypeError):
        build_graph([(0, 1, 0.5)])


def test_cycle_antipode():
    assert cycle(6).oracle.distance(0, 3) == 3


def test_unit_square_diagonal():
    g = gen_grid(2, 2).graph
    assert g.oracle.distance((0, 0), (1, 1)) == 2


def test_mod8_small_distance():
    g = gen_mod8(2).graph
    assert g.oracle.distance((0, 0), (1, 1)) == Fraction(5, 2)


def test_same_edge_points():
    g = cycle(4)
    e = g.edge_id(0, 1)
    p, q = EdgePoint(e, Fraction(1, 4)), EdgePoint(e, Fraction(3, 4))
    assert distance_points(g, p, q) == Fraction(1, 2)
    assert distance_points(g, p, p) == 0


def test_midpoint_to_antipode():
    g = cycle(6)
    assert distance_points(g, g.point(0, 1, Fraction(1, 2)), VertexPoint(3)) == Fraction(5, 2)


def test_point_normalisation():
    g = cycle(4)
    assert g.point(0, 1, 0) == VertexPoint(0)
    assert g.point(0, 1, 1) == VertexPoint(1)
    e = g.edge_id(0, 1)
    # offsets are measured from the lower-indexed endpoint
    assert g.point(1, 0, Fraction(1, 4)) == EdgePoint(e, Fraction(3, 4))


@pytest.mark.parametrize("p", [EdgePoint(0, Fraction(0)), EdgePoint(0, Fraction(1)), EdgePoint(9, Fraction(1, 2)),
                               VertexPoint("zz")])
def test_invalid_points(p):
    g = cycle(4)
    with pytest.raises(InvalidPoint):
        distance_points(g, p, VertexPoint(0))


def test_geodesics_square():
    g = gen_grid(2, 2).graph
    paths, truncated = geodesics_between(g, (0, 0), (1, 1))
    assert len(paths) == 2 and not truncated
    assert all(p.length == 2 for p in paths)


def test_geodesics_quadrant_and_cap():
    g = gen_quadrant(4).graph
    paths, truncated = geodesics_between(g, (0, 0), (2, 2))
    assert len(paths) == 6 and not truncated
    assert count_geodesics(g, (0, 0), (2, 2)) == 6
    one, truncated = geodesics_between(g, (0, 0), (2, 2), cap=1)
    assert len(one) == 1 and truncated
    assert one[0] == paths[0]


def test_geodesics_are_lexicographic():
    g = gen_quadrant(3).graph
    paths, _ = geodesics_between(g, (0, 0), (2, 1))
    keys = [[g.index(v) for v in p.vertices] for p in paths]
    assert keys == sorted(keys)


def test_text_round_trip():
    g = gen_mod8(3).graph
    text = format_graph(g)
    again = parse_graph(text)
    assert format_graph(again) == text
    assert again.oracle.distance("0,0", "1,1") == Fraction(5, 2)


def test_parse_comments_and_integers():
    g = parse_graph("# a triangle\na b 1\nb c 3/2\n\nc a 2\n")
    assert g.length("b", "c") == Fraction(3, 2)


@pytest.mark.parametrize("text", ["a b 0.5\n", "a b\n", "a b x\n", "a b 1/0\n"])
def test_parse_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


@given(graphs())
def test_metric_axioms(g):
    assert g.oracle.check_metric()
    D = all_pairs_distances(g)
    for u in range(g.n):
        for v in range(g.n):
            assert (D.scaled(u, v) == 0) == (u == v)


@given(graphs())
def test_distances_match_floyd_warshall(g):
    fw = floyd_warshall(g)
    for u in g.vertices:
        for v in g.vertices:
            assert g.oracle.distance(u, v) == fw[u][v]


@given(graphs(max_nodes=6), st.integers(0, 10**6))
def test_point_distance_oracle(g, seed):
    rng = random.Random(seed)
    for _ in range(3):
        p, q = random_point(rng, g), random_point(rng, g)
        assert distance_points(g, p, q) == point_distance(g, p, q)


@given(graphs())
def test_vertex_points_agree_with_table(g):
    for u in g.vertices:
        for v in g.vertices:
            assert distance_points(g, VertexPoint(u), VertexPoint(v)) == g.oracle.distance(u, v)


@given(graphs(), st.data())
def test_geodesics_have_geodesic_length(g, data):
    u = data.draw(st.sampled_from(g.vertices))
    v = data.draw(st.sampled_from(g.vertices))
    if u == v:
        return
    paths, truncated = geodesics_between(g, u, v, cap=8)
    assert paths
    d = g.oracle.distance(u, v)
    for p in paths:
        assert p.length == d == g.path_length(p.vertices)
        assert is_geodesic(g, p.vertices)
    assert len(set(p.vertices for p in paths)) == len(paths)
    assert truncated == (count_geodesics(g, u, v) > 8)


@given(graphs(unit=True, max_nodes=9))
def test_breadth_first_rows_match_floyd_warshall(g):
    # unit graphs take the breadth-first route through the oracle
    assert g.uniform
    fw = floyd_warshall(g)
    assert all(g.oracle.distance(u, v) == fw[u][v] for u in g.vertices for v in g.vertices)


@given(graphs())
def test_format_is_a_fixed_point(g):
    text = format_graph(g)
    again = parse_graph(text)
    assert format_graph(again) == text
    assert (again.n, again.m) == (g.n, g.m)
