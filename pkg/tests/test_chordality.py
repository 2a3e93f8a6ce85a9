from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperchord.chordality import (
    ChordalityParams,
    Outcome,
    VerifyBudget,
    check_densely_path_chordal,
    check_edge_chordal,
    check_path_chordal,
    check_triangle_chordal,
    revalidate,
    verify_theorems,
)
from hyperchord.cycles import CycleBudget, cycle_from_vertices, enumerate_cycles
from hyperchord.families import gen_complete, gen_cycle, gen_quadrant, gen_star, gen_tree, gen_zxp3
from hyperchord.graph import build_graph
from strategies import cyclic_graphs

HOLDS, FAILS, INCONCLUSIVE = Outcome.HOLDS, Outcome.FAILS, Outcome.INCONCLUSIVE


def test_params_validation():
    with pytest.raises(ValueError):
        ChordalityParams(-1)
    with pytest.raises(ValueError):
        ChordalityParams(1, eps=0)
    assert ChordalityParams(3, m="1/2").m == Fraction(1, 2)


def test_complete_graph_is_edge_chordal():
    v = check_edge_chordal(gen_complete(5).graph, 4, 1)
    assert v.outcome is HOLDS and v.qualifying > 0
    revalidate(v)


def test_bare_cycle_is_not_edge_chordal():
    v = check_edge_chordal(gen_cycle(6).graph, 4, 10)
    assert v.outcome is FAILS
    assert len(v.witness.cycle) == 6
    revalidate(v)


def test_zxp3_not_edge_chordal():
    g = gen_zxp3(6).graph
    v = check_edge_chordal(g, 8, 3, CycleBudget(max_length=20))
    assert v.outcome is FAILS
    C = v.witness.cycle
    assert C.length >= 8
    # the witness runs through rows 1 and 3 only, joined by two vertical ends
    rows = {j for _, j in C.vertices}
    assert rows == {1, 2, 3}
    assert sum(1 for _, j in C.vertices if j == 2) == 2
    revalidate(v)


def test_complete_graph_is_path_chordal():
    v = check_path_chordal(gen_complete(5).graph, 4, 2)
    assert v.outcome is HOLDS
    revalidate(v)


def test_quadrant_square_is_a_path_chordal_witness():
    fam = gen_quadrant(10)
    C = cycle_from_vertices(fam.graph, fam.cycles["C_8"])
    v = check_path_chordal(fam.graph, 8, 4, cycles=[C])
    assert v.outcome is FAILS
    assert v.witness.cycle.length == 28
    assert v.witness.min_shortcut == 7
    unbounded = check_path_chordal(fam.graph, 8, None, cycles=[C])
    assert unbounded.outcome is HOLDS
    assert unbounded.certificates[0].min_shortcut == 7


def test_zxp3_densely_path_chordal():
    v = check_densely_path_chordal(gen_zxp3(4).graph, 3, 5, 2, CycleBudget(max_length=14))
    assert v.outcome is HOLDS and v.qualifying > 100
    revalidate(v)


def test_quadrant_densely_path_chordal_small():
    v = check_densely_path_chordal(gen_quadrant(5).graph, 2, 6, None, CycleBudget(max_length=12))
    assert v.outcome is HOLDS
    revalidate(v)


def test_bare_cycle_not_densely_path_chordal():
    v = check_densely_path_chordal(gen_cycle(8).graph, 100, 6)
    assert v.outcome is FAILS
    assert v.witness.density.positions == ()
    revalidate(v)


def test_truncation_gives_inconclusive():
    g = gen_complete(6).graph
    v = check_edge_chordal(g, 4, 1, CycleBudget(max_cycles=10))
    assert v.outcome is INCONCLUSIVE and v.truncated and v.witness is None


def test_failure_beats_truncation():
    g = gen_cycle(7).graph
    v = check_edge_chordal(g, 3, 1, CycleBudget(max_cycles=1))
    assert v.outcome is FAILS


def test_no_qualifying_cycles_is_vacuous():
    v = check_edge_chordal(gen_tree(8).graph, 0, 1)
    assert v.outcome is HOLDS and v.qualifying == 0
    assert v.notes


def test_length_bound_is_the_scope():
    # the long outer cycle has no chord but lies outside the scope
    g = gen_quadrant(3).graph
    v = check_edge_chordal(g, 4, 1, CycleBudget(max_length=4))
    assert v.outcome is FAILS  # unit squares have no chords either
    w = check_edge_chordal(g, 5, 1, CycleBudget(max_length=4))
    assert w.outcome is HOLDS and w.qualifying == 0


def test_tripod_triangles_hold():
    v = check_triangle_chordal(gen_star(3).graph, 1, 1, 1)
    assert v.outcome is HOLDS and v.qualifying > 0
    revalidate(v)


def test_zxp3_triangles_hold():
    # N = 4 already attains delta = 5/2 and keeps this quick
    d = Fraction(5, 2)
    v = check_triangle_chordal(gen_zxp3(4).graph, 3 * d, 8 * d, d)
    assert v.outcome is HOLDS and v.qualifying > 0
    revalidate(v)


def test_quadrant_triangles_fail():
    v = check_triangle_chordal(gen_quadrant(12).graph, 2, 8, 2)
    assert v.outcome is FAILS
    assert not v.witness.ok and v.witness.max_gap >= 4
    revalidate(v)


def test_threads_do_not_change_verdicts():
    g = gen_zxp3(3).graph
    b = CycleBudget(max_length=12)
    one = check_densely_path_chordal(g, 3, 5, 2, b, threads=1)
    four = check_densely_path_chordal(g, 3, 5, 2, b, threads=4)
    assert one.outcome == four.outcome and one.examined == four.examined
    assert [e.cycle for e in one.certificates] == [e.cycle for e in four.certificates]


# -- implication harness -------------------------------------------------------


def test_verify_on_tree():
    rep = verify_theorems(gen_tree(10, 3).graph)
    assert rep.status == "pass"
    assert rep.rips.delta_low == 0
    assert {r.status for r in rep.results} <= {"pass", "vacuous"}


def test_verify_c6_delta_dense_is_vacuous_in_scope():
    rep = verify_theorems(gen_cycle(6).graph, which=["2.8"])
    (res,) = rep.results
    assert rep.rips.delta_low == Fraction(3, 2)
    assert res.name == "delta-dense" and res.status == "pass"
    assert res.conclusion.qualifying == 0


def test_verify_zxp3_dense_delta():
    rep = verify_theorems(gen_zxp3(4).graph, VerifyBudget(cycles=CycleBudget(max_cycles=10**5, max_length=14)),
                          which=["dense-delta"])
    (res,) = rep.results
    assert res.status == "pass"
    assert res.constants["bound"] == 5


def test_verify_rejects_unknown():
    with pytest.raises(ValueError):
        verify_theorems(gen_cycle(4).graph, which=["9.9"])


def test_verify_budget_truncation_makes_vacuous():
    b = VerifyBudget(rips_triple_cap=3)
    rep = verify_theorems(gen_cycle(8).graph, b, which=["delta-dense", "triangles"])
    assert rep.rips.truncated
    assert [r.status for r in rep.results] == ["vacuous", "vacuous"]


# -- properties ----------------------------------------------------------------


@given(cyclic_graphs(unit=True), st.integers(3, 8), st.integers(1, 3))
@settings(max_examples=40)
def test_edge_chordal_implies_dense(g, k, m):
    b = CycleBudget(max_length=12)
    if check_edge_chordal(g, k, m, b).holds:
        assert check_densely_path_chordal(g, Fraction(k, 2), k, m, b).holds


@given(cyclic_graphs(), st.fractions(Fraction(1, 2), 4), st.fractions(0, 3), st.fractions(0, 2))
@settings(max_examples=40)
def test_densely_monotone(g, eps, m, bump):
    cycles, _ = enumerate_cycles(g)
    base = check_densely_path_chordal(g, eps, 2, m, cycles=cycles)
    revalidate(base)
    if base.holds:
        assert check_densely_path_chordal(g, eps + bump, 2, m, cycles=cycles).holds
        assert check_densely_path_chordal(g, eps, 2, m + bump, cycles=cycles).holds
        assert check_densely_path_chordal(g, eps, 2 + bump, m, cycles=cycles).holds


@given(cyclic_graphs(), st.fractions(0, 6), st.fractions(0, 2))
@settings(max_examples=40)
def test_path_chordal_monotone_and_revalidates(g, bound, bump):
    cycles, _ = enumerate_cycles(g)
    v = check_path_chordal(g, 3, bound, cycles=cycles)
    revalidate(v)
    if v.holds:
        assert check_path_chordal(g, 3, bound + bump, cycles=cycles).holds
        assert check_path_chordal(g, 3, None, cycles=cycles).holds


@given(cyclic_graphs(max_nodes=5, unit=True), st.integers(1, 3))
@settings(max_examples=25)
def test_triangle_checker_revalidates(g, m):
    v = check_triangle_chordal(g, 2, 3, m, geodesic_cap=2)
    revalidate(v)
    if v.holds:
        assert check_triangle_chordal(g, 3, 3, m, geodesic_cap=2).holds


def test_revalidate_catches_tampering():
    g = build_graph([(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)])
    v = check_edge_chordal(g, 4, 1)
    assert v.holds
    ev = v.certificates[0]
    ev.ok = False
    with pytest.raises(AssertionError):
        revalidate(v)
