"""Chordality checks over enumerated cycles and triangles, and the implication harness."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import islice
from typing import Iterable, Sequence

import numpy as np

from .cycles import Cycle, CycleBudget, cycle_distance, iter_cycles
from .graph import GraphPath, MetricGraph, _geodesic_indices, as_fraction
from .hyperbolicity import GeodesicTriangle, RipsEstimate, _max_corners, rips_delta
from .shortcuts import (
    DensityReport,
    ShortcutCertificate,
    _bound_int,
    _int_gap_dense,
    _restricted_search,
    density_check,
    shortcut_vertices,
    strict_shortcut,
    triangle_density,
)


class Outcome(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ChordalityParams:
    k: Fraction
    m: Fraction | None = None
    eps: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "k", as_fraction(self.k))
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.m is not None:
            object.__setattr__(self, "m", as_fraction(self.m))
            if self.m < 0:
                raise ValueError("m must be nonnegative")
        if self.eps is not None:
            object.__setattr__(self, "eps", as_fraction(self.eps))
            if self.eps <= 0:
                raise ValueError("eps must be positive")


@dataclass(frozen=True)
class EdgeShortcut:
    """A single edge joining two cycle vertices that beats the cycle distance."""

    cycle: Cycle
    u: object
    v: object
    length: Fraction

    def validate(self, m=None) -> None:
        g = self.cycle.graph
        assert self.u in self.cycle and self.v in self.cycle
        assert g.has_edge(self.u, self.v) and g.length(self.u, self.v) == self.length
        d_c = Fraction(self.cycle.int_distance(g.index(self.u), g.index(self.v)), g.scale)
        assert self.length < d_c
        if m is not None:
            assert self.length <= m


@dataclass
class CycleEvidence:
    """Per-cycle outcome: shortcut certificates and (for density checks) the report."""

    cycle: Cycle
    ok: bool
    shortcuts: list = field(default_factory=list)
    density: DensityReport | None = None
    min_shortcut: Fraction | None = None


@dataclass
class TriangleEvidence:
    triangle: GeodesicTriangle
    ok: bool
    positions: list
    max_gap: Fraction


@dataclass
class Verdict:
    property: str
    outcome: Outcome
    params: ChordalityParams
    certificates: list
    witness: CycleEvidence | TriangleEvidence | None
    examined: int
    qualifying: int
    truncated: bool
    budget: dict
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS


DEFAULT_MAX_CERTIFICATES = 100


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("HYPERCHORD_THREADS", "1") or 1)
    return max(1, int(threads))


def _ordered_map(fn, items: Iterable, threads: int, chunk: int = 512):
    """Yield ``fn(item)`` in input order, optionally on a thread pool."""
    if threads <= 1:
        for it in items:
            yield fn(it)
        return
    it = iter(items)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            block = list(islice(it, chunk))
            if not block:
                return
            yield from pool.map(fn, block)


def _budget_record(budget: CycleBudget | None, explicit: bool) -> dict:
    if explicit:
        return {"scope": "explicit cycles"}
    budget = budget or CycleBudget()
    return {
        "scope": "enumerated cycles",
        "max_cycles": budget.max_cycles,
        "max_length": budget.max_length,
        "vertex_subset": None if budget.vertices is None else len(budget.vertices),
    }


def _run_cycles(name, graph, params, budget, cycles, per_cycle, max_certificates, threads, notes):
    """Shared reduction: first failing cycle in order wins; truncation gives Inconclusive."""
    explicit = cycles is not None
    k_int = params.k * graph.scale
    source = list(cycles) if explicit else iter_cycles(graph, budget)
    limit = None if explicit or budget is None else budget.max_cycles

    def qualifying_stream():
        for c in source:
            if c.graph is not graph:
                raise ValueError("cycle belongs to a different graph")
            yield c

    examined = 0
    qualifying = 0
    truncated = False
    certs: list = []
    witness = None
    stream = qualifying_stream()

    def gated():
        nonlocal examined, truncated
        for c in stream:
            if limit is not None and examined >= limit:
                truncated = True
                return
            examined += 1
            if c.int_length >= k_int:
                yield c

    for ev in _ordered_map(per_cycle, gated(), resolve_threads(threads)):
        qualifying += 1
        if not ev.ok:
            witness = ev
            break
        if len(certs) < max_certificates:
            certs.append(ev)
    if witness is not None:
        outcome = Outcome.FAILS
    elif truncated:
        outcome = Outcome.INCONCLUSIVE
    else:
        outcome = Outcome.HOLDS
        if qualifying == 0:
            notes.append("no qualifying cycle in scope; holds vacuously")
    return Verdict(name, outcome, params, certs, witness, examined, qualifying, truncated,
                   _budget_record(budget, explicit), notes)


def check_edge_chordal(graph: MetricGraph, k, m, budget: CycleBudget | None = None, *,
                       cycles: Sequence[Cycle] | None = None,
                       max_certificates: int = DEFAULT_MAX_CERTIFICATES, threads=None) -> Verdict:
    """Every qualifying cycle has a single-edge shortcut of length at most ``m``."""
    params = ChordalityParams(k, m=m)
    m_int = _bound_int(graph, params.m)
    lengths = graph.int_lengths
    verts = graph.vertices

    def per_cycle(C: Cycle) -> CycleEvidence:
        cyc = C.index_set
        best = None
        for p in C.idx:
            for q, e in graph.adjacency(p):
                if q <= p or q not in cyc:
                    continue
                le = lengths[e]
                if le <= m_int and le < C.int_distance(p, q):
                    key = (le, p, q)
                    if best is None or key < best:
                        best = key
        if best is None:
            return CycleEvidence(C, False)
        le, p, q = best
        return CycleEvidence(C, True, [EdgeShortcut(C, verts[p], verts[q], Fraction(le, graph.scale))])

    return _run_cycles("edge-chordal", graph, params, budget, cycles, per_cycle,
                       max_certificates, threads, [])


def _geodesic_path(graph: MetricGraph, i: int, j: int) -> GraphPath:
    paths, _ = _geodesic_indices(graph, i, j, 1)
    verts = tuple(graph.vertices[x] for x in paths[0])
    return GraphPath(verts, Fraction(graph.oracle.row(i)[j], graph.scale))


def check_path_chordal(graph: MetricGraph, k, bound=None, budget: CycleBudget | None = None, *,
                       cycles: Sequence[Cycle] | None = None,
                       max_certificates: int = DEFAULT_MAX_CERTIFICATES, threads=None) -> Verdict:
    """Every qualifying cycle has a (not necessarily strict) shortcut.

    A shortcut joins cycle vertices ``p, q`` with ``d_G(p, q) < d_C(p, q)``;
    with ``bound`` given it must also satisfy ``d_G(p, q) <= bound``. The
    witness of a failure records the shortest shortcut the cycle does have
    (``min_shortcut``), if any.
    """
    params = ChordalityParams(k, m=bound)
    b_int = _bound_int(graph, params.m)
    oracle = graph.oracle
    notes = ["reading: " + ("bounded shortcuts" if bound is not None else "unbounded shortcuts")]

    def per_cycle(C: Cycle) -> CycleEvidence:
        pos = np.array(C.int_positions, dtype=object)
        D = np.array([[oracle.row(i)[j] for j in C.idx] for i in C.idx], dtype=object)
        diff = np.abs(pos[:, None] - pos[None, :])
        dC = np.minimum(diff, C.int_length - diff)
        short = D < dC
        if not short.any():
            return CycleEvidence(C, False)
        dmin = min(D[short])
        ok = b_int is None or dmin <= b_int
        if not ok:
            return CycleEvidence(C, False, min_shortcut=Fraction(int(dmin), graph.scale))
        cand = [(D[a, b], C.idx[a], C.idx[b]) for a, b in zip(*np.nonzero(short)) if C.idx[a] < C.idx[b]]
        d, p, q = min(cand)
        path = _geodesic_path(graph, p, q)
        cert = ShortcutCertificate(path.vertices[0], path.vertices[-1], path, C, strict=False)
        return CycleEvidence(C, True, [cert], min_shortcut=Fraction(int(dmin), graph.scale))

    return _run_cycles("path-chordal", graph, params, budget, cycles, per_cycle,
                       max_certificates, threads, notes)


def _dense_shortcut_vertices(C: Cycle, limit: int | None, two_eps: Fraction) -> tuple[bool, list[int]]:
    """Decide density of C's shortcut vertices, stopping once density is reached.

    Returns ``(dense, vertices found)``; when not dense every vertex of C
    has been examined, so the found set is complete.
    """
    g = C.graph
    lengths = g.int_lengths
    cyc = C.index_set
    two_eps_int = two_eps * g.scale
    pos = C.int_positions
    L = C.int_length
    found: set[int] = set()
    # chords first: cheap and frequent
    for p in C.idx:
        for q, e in g.adjacency(p):
            if q in cyc and q > p:
                le = lengths[e]
                if (limit is None or le <= limit) and le < C.int_distance(p, q):
                    found.add(p)
                    found.add(q)
    if found and _int_gap_dense([pos[C.slot(v)] for v in found], L, two_eps_int):
        return True, sorted(found, key=C.slot)
    for p in C.idx:
        if p in found:
            continue
        hits, _, _ = _restricted_search(C, p, limit, True)
        if hits:
            found.add(p)
            found.update(hits)
            if _int_gap_dense([pos[C.slot(v)] for v in found], L, two_eps_int):
                return True, sorted(found, key=C.slot)
    return False, sorted(found, key=C.slot)


def _complete_dense_vertices(C: Cycle, limit: int | None) -> list[int]:
    """All shortcut vertices of C (used for retained certificates)."""
    out = set()
    for p in C.idx:
        hits, _, _ = _restricted_search(C, p, limit, False)
        if hits:
            out.add(p)
            out.update(hits)
    return sorted(out, key=C.slot)


def check_densely_path_chordal(graph: MetricGraph, eps, k, m=None, budget: CycleBudget | None = None, *,
                               cycles: Sequence[Cycle] | None = None,
                               max_certificates: int = DEFAULT_MAX_CERTIFICATES, threads=None) -> Verdict:
    """Every qualifying cycle's strict-shortcut vertices are ``eps``-dense in it.

    Shortcuts are bounded by ``m`` when given. Retained certificates carry
    the full shortcut-vertex set with one strict shortcut per vertex.
    """
    params = ChordalityParams(k, m=m, eps=eps)
    limit = _bound_int(graph, params.m)
    two_eps = 2 * params.eps

    def per_cycle(C: Cycle) -> CycleEvidence:
        dense, found = _dense_shortcut_vertices(C, limit, two_eps)
        if dense:
            return CycleEvidence(C, True)
        certs = shortcut_vertices(graph, C, params.m)
        report = density_check(C, [graph.vertices[i] for i in found], params.eps)
        return CycleEvidence(C, False, list(certs.values()), report)

    verdict = _run_cycles("densely-path-chordal", graph, params, budget, cycles, per_cycle,
                          max_certificates, threads, [])
    # fill in full evidence for the retained (passing) cycles
    for ev in verdict.certificates:
        certs = shortcut_vertices(graph, ev.cycle, params.m)
        ev.shortcuts = list(certs.values())
        ev.density = density_check(ev.cycle, list(certs), params.eps)
    return verdict


# -- triangles ------------------------------------------------------------------


def iter_corner_triples(graph: MetricGraph, corners: Sequence[int]):
    """Corner index triples ``(x, y, z)``: bigons ``(x, y, y)`` then distinct ``x < y < z``."""
    k = len(corners)
    for a in range(k):
        for b in range(a + 1, k):
            yield corners[a], corners[b], corners[b]
            for c in range(b + 1, k):
                yield corners[a], corners[b], corners[c]


def iter_triangles(graph: MetricGraph, x: int, y: int, z: int, geodesic_cap: int):
    """Geodesic triangles on the given corners, sides from the first ``cap`` geodesics."""
    verts = graph.vertices
    gxy, _ = _geodesic_indices(graph, x, y, geodesic_cap)
    if y == z:
        for i in range(len(gxy)):
            for j in range(i, len(gxy)):
                yield GeodesicTriangle(
                    graph, (verts[x], verts[y], verts[y]),
                    [[verts[t] for t in gxy[i]], [verts[y]], [verts[t] for t in reversed(gxy[j])]],
                )
        return
    gyz, _ = _geodesic_indices(graph, y, z, geodesic_cap)
    gxz, _ = _geodesic_indices(graph, x, z, geodesic_cap)
    for s1 in gxy:
        for s2 in gyz:
            for s3 in gxz:
                yield GeodesicTriangle(
                    graph, (verts[x], verts[y], verts[z]),
                    [[verts[t] for t in s1], [verts[t] for t in s2], [verts[t] for t in reversed(s3)]],
                )


DEFAULT_TRIANGLE_GEODESIC_CAP = 4


def check_triangle_chordal(graph: MetricGraph, eps, k, m, *, triple_cap: int | None = None,
                           geodesic_cap: int = DEFAULT_TRIANGLE_GEODESIC_CAP, h=Fraction(1, 4),
                           max_certificates: int = DEFAULT_MAX_CERTIFICATES, threads=None) -> Verdict:
    """Density of short-cut positions on every qualifying geodesic triangle.

    Corners are vertex triples (bigons included). The scope is every
    triangle whose sides come from the first ``geodesic_cap`` lexicographic
    geodesics of each corner pair; ``triple_cap`` limits the corner prefix
    and marks the verdict truncated when it bites.
    """
    params = ChordalityParams(k, m=m, eps=eps)
    h = as_fraction(h)
    total = graph.n
    kc = total if triple_cap is None else _max_corners(triple_cap, total)
    corners = list(range(kc))
    truncated = kc < total
    row = graph.oracle.row
    k_int = params.k * graph.scale
    notes = [f"geodesic scope: first {geodesic_cap} geodesics per corner pair"]

    def triples():
        for x, y, z in iter_corner_triples(graph, corners):
            if row(x)[y] + row(y)[z] + row(z)[x] >= k_int:
                yield x, y, z

    def per_triple(t):
        x, y, z = t
        out = []
        for T in iter_triangles(graph, x, y, z, geodesic_cap):
            pos, gap, dense = triangle_density(T, params.m, h, params.eps)
            out.append(TriangleEvidence(T, dense, pos, gap))
            if not dense:
                break
        return out

    certs, witness = [], None
    examined = qualifying = 0
    for evs in _ordered_map(per_triple, triples(), resolve_threads(threads), chunk=64):
        examined += 1
        for ev in evs:
            qualifying += 1
            if not ev.ok:
                witness = ev
                break
            if len(certs) < max_certificates:
                certs.append(ev)
        if witness is not None:
            break
    if witness is not None:
        outcome = Outcome.FAILS
    elif truncated:
        outcome = Outcome.INCONCLUSIVE
    else:
        outcome = Outcome.HOLDS
        if qualifying == 0:
            notes.append("no qualifying triangle in scope; holds vacuously")
    budget = {
        "scope": "vertex-corner triangles",
        "triple_cap": triple_cap,
        "corners_examined": kc,
        "corners_total": total,
        "geodesic_cap": geodesic_cap,
        "resolution": h,
    }
    return Verdict("triangle-chordal", outcome, params, certs, witness, examined, qualifying,
                   truncated, budget, notes)


# -- re-validation ----------------------------------------------------------------


def revalidate(verdict: Verdict) -> None:
    """Re-derive certificates and witness from scratch; raises ``AssertionError``."""
    p = verdict.params
    name = verdict.property
    for ev in verdict.certificates:
        if name != "triangle-chordal":
            assert ev.ok and ev.cycle.length >= p.k
        if name == "edge-chordal":
            (cert,) = ev.shortcuts
            cert.validate(p.m)
        elif name == "path-chordal":
            (cert,) = ev.shortcuts
            cert.validate()
            if p.m is not None:
                assert cert.length <= p.m
        elif name == "densely-path-chordal":
            for cert in ev.shortcuts:
                cert.validate()
                if p.m is not None:
                    assert cert.length <= p.m
            assert ev.density.dense
            assert density_check(ev.cycle, [c.p for c in ev.shortcuts], p.eps).dense
        elif name == "triangle-chordal":
            assert ev.ok and ev.triangle.length >= p.k
            _, _, dense = triangle_density(ev.triangle, p.m, verdict.budget["resolution"], p.eps)
            assert dense
    w = verdict.witness
    if verdict.outcome is Outcome.FAILS:
        assert w is not None and not w.ok
        if name == "triangle-chordal":
            pos, gap, dense = triangle_density(w.triangle, p.m, verdict.budget["resolution"], p.eps)
            assert not dense and w.triangle.length >= p.k
            return
        C = w.cycle
        g = C.graph
        assert C.length >= p.k
        pairs = [(a, b) for i, a in enumerate(C.vertices) for b in C.vertices[i + 1:]]
        if name == "edge-chordal":
            for a, b in pairs:
                if g.has_edge(a, b):
                    le = g.length(a, b)
                    assert not (le <= p.m and le < cycle_distance(C, a, b))
        elif name == "path-chordal":
            for a, b in pairs:
                d = g.oracle.distance(a, b)
                if d < cycle_distance(C, a, b):
                    assert p.m is not None and d > p.m
        elif name == "densely-path-chordal":
            found = set()
            for a, b in pairs:
                if strict_shortcut(g, C, a, b, p.m) is not None:
                    found.update((a, b))
            assert not density_check(C, found, p.eps).dense
    else:
        assert w is None
        if verdict.outcome is Outcome.INCONCLUSIVE:
            assert verdict.truncated


# -- implication harness ----------------------------------------------------------


IMPLICATIONS = ("edge-dense", "dense-delta", "delta-dense", "triangles")
IMPLICATION_ALIASES = {"2.3": "edge-dense", "2.5": "dense-delta", "2.8": "delta-dense", "3.2": "triangles"}


@dataclass
class VerifyBudget:
    cycles: CycleBudget = field(default_factory=lambda: CycleBudget(max_cycles=200_000, max_length=Fraction(20)))
    h: Fraction = Fraction(1, 4)
    rips_triple_cap: int | None = 200_000
    rips_corners: object = "junction"
    triangle_triple_cap: int | None = 200_000
    triangle_geodesic_cap: int = DEFAULT_TRIANGLE_GEODESIC_CAP
    k: Fraction = Fraction(5)
    m: Fraction = Fraction(2)
    eps: Fraction = Fraction(3)
    threads: int | None = None


@dataclass
class ImplicationResult:
    name: str
    status: str  # pass / fail / inconclusive / vacuous
    statement: str
    constants: dict
    premise: Verdict | RipsEstimate | None = None
    conclusion: Verdict | None = None
    detail: str = ""


@dataclass
class VerifyReport:
    results: list
    rips: RipsEstimate | None
    delta_plus: Fraction | None

    @property
    def status(self) -> str:
        states = {r.status for r in self.results}
        if "fail" in states:
            return "fail"
        if "inconclusive" in states:
            return "inconclusive"
        return "pass"


def _status_from(verdict: Verdict) -> str:
    return {Outcome.HOLDS: "pass", Outcome.FAILS: "fail", Outcome.INCONCLUSIVE: "inconclusive"}[verdict.outcome]


def slack(h: Fraction) -> Fraction:
    """Extra rational slack added on top of the sampling margin: one grid step."""
    return h


def verify_theorems(graph: MetricGraph, budget: VerifyBudget | None = None,
                    which: Iterable[str] = IMPLICATIONS) -> VerifyReport:
    """Run the four implications on ``graph`` within ``budget``.

    * edge-dense: edge-chordal(k, m) holds => (k/2)-densely (k, m)-path-chordal.
    * dense-delta: eps-densely (k, m)-path-chordal => delta <= max(k/4, eps + m).
    * delta-dense: with delta+ = delta_low + h/2 + slack, the graph is
      (2 delta+)-densely (4 delta+)-path-chordal.
    * triangles: (3 delta+)-densely (8 delta+, delta+)-path-chordal on triangles.

    A premise that is not established (fails, or is cut short by a budget)
    makes the implication vacuous.
    """
    b = budget or VerifyBudget()
    wanted = [IMPLICATION_ALIASES.get(w, w) for w in which]
    for w in wanted:
        if w not in IMPLICATIONS:
            raise ValueError(f"unknown implication {w!r}")
    results = []
    rips = None
    dplus = None
    need_rips = any(w in wanted for w in ("dense-delta", "delta-dense", "triangles"))
    if need_rips:
        rips = rips_delta(graph, b.h, triple_cap=b.rips_triple_cap, corners=b.rips_corners)
        dplus = rips.delta_low + rips.margin + slack(b.h)

    if "edge-dense" in wanted:
        k, m = b.k, b.m
        consts = {"k": k, "m": m, "eps": k / 2}
        stmt = f"edge-chordal({k}, {m}) => {k / 2}-densely ({k}, {m})-path-chordal"
        pre = check_edge_chordal(graph, k, m, b.cycles, threads=b.threads)
        if pre.outcome is not Outcome.HOLDS:
            results.append(ImplicationResult("edge-dense", "vacuous", stmt, consts, pre,
                                             detail=f"premise {pre.outcome.value}"))
        else:
            post = check_densely_path_chordal(graph, k / 2, k, m, b.cycles, threads=b.threads)
            results.append(ImplicationResult("edge-dense", _status_from(post), stmt, consts, pre, post,
                                             detail="; ".join(post.notes)))

    if "dense-delta" in wanted:
        k, m, eps = b.k, b.m, b.eps
        bound = max(k / 4, eps + m)
        consts = {"k": k, "m": m, "eps": eps, "bound": bound,
                  "delta_low": rips.delta_low, "margin": rips.margin}
        stmt = f"{eps}-densely ({k}, {m})-path-chordal => delta <= {bound}"
        pre = check_densely_path_chordal(graph, eps, k, m, b.cycles, threads=b.threads)
        if pre.outcome is not Outcome.HOLDS:
            results.append(ImplicationResult("dense-delta", "vacuous", stmt, consts, pre,
                                             detail=f"premise {pre.outcome.value}"))
        elif rips.delta_low > bound:
            results.append(ImplicationResult("dense-delta", "fail", stmt, consts, pre,
                                             detail=f"delta_low {rips.delta_low} exceeds {bound}"))
        elif rips.truncated:
            results.append(ImplicationResult("dense-delta", "inconclusive", stmt, consts, pre,
                                             detail="Rips scan truncated"))
        elif rips.delta_low + rips.margin <= bound:
            results.append(ImplicationResult("dense-delta", "pass", stmt, consts, pre,
                                             detail=f"{rips.delta_low} + {rips.margin} <= {bound}"))
        else:
            results.append(ImplicationResult("dense-delta", "inconclusive", stmt, consts, pre,
                                             detail="bound falls inside the sampling margin"))

    if "delta-dense" in wanted:
        consts = {"delta_plus": dplus, "eps": 2 * dplus if dplus is not None else None,
                  "k": 4 * dplus if dplus is not None else None}
        stmt = "delta-hyperbolic => (2 delta+)-densely (4 delta+)-path-chordal"
        if rips.truncated:
            results.append(ImplicationResult("delta-dense", "vacuous", stmt, consts, rips,
                                             detail="delta not established (Rips scan truncated)"))
        else:
            post = check_densely_path_chordal(graph, 2 * dplus, 4 * dplus, None, b.cycles, threads=b.threads)
            results.append(ImplicationResult("delta-dense", _status_from(post), stmt, consts, rips, post,
                                             detail="; ".join(post.notes)))

    if "triangles" in wanted:
        consts = {"delta_plus": dplus,
                  "eps": 3 * dplus if dplus is not None else None,
                  "k": 8 * dplus if dplus is not None else None, "m": dplus}
        stmt = "delta-hyperbolic => (3 delta+)-densely (8 delta+, delta+)-path-chordal on triangles"
        if rips.truncated:
            results.append(ImplicationResult("triangles", "vacuous", stmt, consts, rips,
                                             detail="delta not established (Rips scan truncated)"))
        else:
            post = check_triangle_chordal(graph, 3 * dplus, 8 * dplus, dplus,
                                          triple_cap=b.triangle_triple_cap,
                                          geodesic_cap=b.triangle_geodesic_cap, h=b.h, threads=b.threads)
            results.append(ImplicationResult("triangles", _status_from(post), stmt, consts, rips, post,
                                             detail="; ".join(post.notes)))
    return VerifyReport(results, rips, dplus)
