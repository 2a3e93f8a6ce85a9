from __future__ import annotations

import json
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperchord.cycles import cycle_distance, cycle_from_vertices
from hyperchord.families import (
    WindowTooSmall,
    attach_chain,
    gen_basic,
    gen_complete,
    gen_cycle,
    gen_hyperapprox_line,
    gen_mod4,
    gen_mod8,
    gen_quadrant,
    gen_tree,
    gen_zxp3,
    partial_sum,
)
from hyperchord.graph import format_graph, is_geodesic, read_graph
from hyperchord.shortcuts import shortcut_vertices
from oracles import to_nx


@pytest.mark.parametrize("N, n, m", [(1, 9, 12), (3, 21, 32), (6, 39, 62)])
def test_zxp3_counts(N, n, m):
    g = gen_zxp3(N).graph
    assert (g.n, g.m) == (n, m)
    assert (g.n, g.m) == ((2 * N + 1) * 3, 2 * N * 3 + (2 * N + 1) * 2)


def test_zxp3_named_cycles():
    fam = gen_zxp3(4)
    assert cycle_from_vertices(fam.graph, fam.cycles["outer"]).length == 20
    for w in range(1, 5):
        assert cycle_from_vertices(fam.graph, fam.cycles[f"rows13_{w}"]).length == 2 * w + 4


def test_quadrant_counts_and_squares():
    fam = gen_quadrant(2)
    assert (fam.graph.n, fam.graph.m) == (9, 12)
    big = gen_quadrant(9)
    for n in range(2, 10):
        C = cycle_from_vertices(big.graph, big.cycles[f"C_{n}"])
        assert C.length == 4 * n - 4


def test_quadrant_square_range():
    with pytest.raises(ValueError):
        gen_quadrant(4, squares=[5])


def test_mod4_rung_rule():
    g = gen_mod4(8).graph
    assert g.has_edge((0, 4), (1, 4))
    assert not g.has_edge((1, 4), (2, 4))
    assert g.has_edge((1, 2), (2, 2))
    # top and bottom rows and every vertical edge are present
    assert all(g.has_edge((p, 0), (p + 1, 0)) and g.has_edge((p, 8), (p + 1, 8)) for p in range(8))
    assert all(g.has_edge((p, q), (p, q + 1)) for p in range(9) for q in range(8))


def test_mod4_rejects_small_blocks():
    with pytest.raises(ValueError):
        gen_mod4(3)


def test_mod8_lengths():
    g = gen_mod8(8).graph
    assert g.length((0, 0), (1, 0)) == 1
    assert g.length((1, 0), (1, 1)) == Fraction(3, 2)
    assert partial_sum(3) == 1 + Fraction(1, 2) + Fraction(1, 4) + Fraction(1, 8)
    assert g.has_edge((0, 8), (1, 8)) and g.has_edge((1, 4), (2, 4))
    assert not g.has_edge((0, 4), (1, 4))


@given(st.integers(2, 12))
def test_mod8_lengths_bounded(n):
    g = gen_mod8(n).graph
    assert all(1 <= w < 2 for _, _, w in g.edge_list())


def test_block_chains():
    fam = gen_mod4(6, chain_length=3)
    g = fam.graph
    assert set(fam.cycles) == {"perimeter_4", "perimeter_5", "perimeter_6"}
    assert g.has_edge((4, 0, 0), (5, 0, 0)) and g.has_edge((5, 0, 0), (6, 0, 0))
    assert g.n == 25 + 36 + 49
    for name, seq in fam.cycles.items():
        j = int(name.split("_")[1])
        assert cycle_from_vertices(g, seq).length == 4 * j
    with pytest.raises(ValueError):
        gen_mod4(6, chain_length=4)


def test_hyperapprox_radial_edge_and_gamma():
    fam = gen_hyperapprox_line(2)
    g = fam.graph
    assert g.has_edge((0, 0), (-1, 1))
    gamma = fam.paths["gamma"]
    assert len(gamma) - 1 == 3
    assert is_geodesic(g, gamma)
    assert g.oracle.distance((0, 0), (0, 36)) == 3


def test_hyperapprox_n3():
    fam = gen_hyperapprox_line(3)
    g = fam.graph
    assert g.oracle.distance((0, 0), (0, 216)) == 5
    assert is_geodesic(g, fam.paths["gamma"])
    C = cycle_from_vertices(g, fam.cycles["C_3"])
    assert C.length == 5 + 216


def test_hyperapprox_radial_chains_are_geodesics():
    g = gen_hyperapprox_line(3).graph
    for m in (0, 37, 216, -100):
        chain = [(0, m)]
        for lvl in range(-1, -4, -1):
            up = [v for v in g.vertices if v[0] == lvl and g.has_edge(chain[-1], v)]
            chain.append(min(up, key=lambda v: abs(v[1] * 6 ** (-lvl) - m)))
        assert is_geodesic(g, chain)


def test_hyperapprox_ball_has_no_short_shortcuts():
    fam = gen_hyperapprox_line(3)
    g = fam.graph
    C = cycle_from_vertices(g, fam.cycles["C_3"])
    for top in [(-2, 1), (-2, 5)]:
        ball = {v for v in C.vertices if cycle_distance(C, v, top) < 1}
        assert ball == {top}
        assert not ball & set(shortcut_vertices(g, C, max_len=1))


def test_hyperapprox_shortcut_length_is_the_level():
    fam = gen_hyperapprox_line(3)
    g = fam.graph
    C = cycle_from_vertices(g, fam.cycles["C_3"])
    certs = shortcut_vertices(g, C)
    for w in C.vertices:
        if w[0] < 0:
            cert = certs[w]
            assert cert.length == -w[0]
            assert cert.q[0] == 0


def test_hyperapprox_window_too_small():
    with pytest.raises(WindowTooSmall):
        gen_hyperapprox_line(2, margin=-10)
    with pytest.raises(WindowTooSmall):
        gen_hyperapprox_line(2, margin=-20)
    assert gen_hyperapprox_line(2, margin=0).graph.has_vertex((0, 0))


def test_basic_families():
    assert gen_basic("cycle", 6).graph.m == 6
    assert gen_complete(4).graph.m == 6
    t = gen_tree(10, seed=7).graph
    G = to_nx(t)
    assert nx.is_tree(G)
    assert format_graph(t) == format_graph(gen_tree(10, seed=7).graph)
    with pytest.raises(ValueError):
        gen_basic("wheel", 5)


def test_attach_chain():
    fam = attach_chain(gen_cycle(5), 3, 0)
    g = fam.graph
    assert g.n == 8 and g.oracle.distance(("tail", 3), 2) == 5
    assert fam.cycles == {"C5": list(range(5))}


@pytest.mark.parametrize("make", [lambda: gen_zxp3(3), lambda: gen_quadrant(4), lambda: gen_mod4(8),
                                  lambda: gen_mod8(8), lambda: gen_hyperapprox_line(2)])
def test_generators_are_deterministic(make, tmp_path):
    a, b = make(), make()
    a.write(tmp_path / "a.txt")
    b.write(tmp_path / "b.txt")
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
    assert (tmp_path / "a.txt.json").read_bytes() == (tmp_path / "b.txt.json").read_bytes()
    again = read_graph(tmp_path / "a.txt")
    assert format_graph(again) == (tmp_path / "a.txt").read_text()
    side = json.loads((tmp_path / "a.txt.json").read_text())
    for seq in side["cycles"].values():
        cycle_from_vertices(again, seq)
