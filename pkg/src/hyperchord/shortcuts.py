"""Shortcuts of cycles, shortcut vertices, and density along a cycle or triangle."""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .cycles import Cycle, PointNotOnCycle
from .graph import EdgePoint, GraphPath, MetricGraph, VertexPoint, as_fraction
from .hyperbolicity import GeodesicTriangle


class VertexNotOnCycle(PointNotOnCycle):
    pass


@dataclass(frozen=True)
class ShortcutCertificate:
    """A path ``p -> q`` shorter than the cycle distance between its ends."""

    p: object
    q: object
    path: GraphPath
    cycle: Cycle
    strict: bool = True

    @property
    def length(self) -> Fraction:
        return self.path.length

    def cycle_distance(self) -> Fraction:
        C = self.cycle
        g = C.graph
        return Fraction(C.int_distance(g.index(self.p), g.index(self.q)), g.scale)

    def validate(self) -> None:
        """Re-check the certificate from scratch; raises ``AssertionError``."""
        C = self.cycle
        g = C.graph
        verts = self.path.vertices
        assert verts[0] == self.p and verts[-1] == self.q, "path ends mismatch"
        assert self.p != self.q and self.p in C and self.q in C, "ends not on cycle"
        total = Fraction(0)
        for a, b in zip(verts, verts[1:]):
            assert g.has_edge(a, b), f"missing edge {a!r}-{b!r}"
            total += g.length(a, b)
        assert len(set(verts)) == len(verts), "path repeats a vertex"
        assert total == self.path.length, "length mismatch"
        assert total < self.cycle_distance(), "not shorter than d_C"
        if self.strict:
            inner = verts[1:-1]
            assert not any(v in C for v in inner), "interior vertex on cycle"
            cyc_edges = C.edge_ids
            for a, b in zip(verts, verts[1:]):
                assert g.edge_id(a, b) not in cyc_edges, "path uses a cycle edge"


@dataclass(frozen=True)
class DensityReport:
    positions: tuple[Fraction, ...]
    max_gap: Fraction
    dense: bool
    eps: Fraction
    circumference: Fraction


def _bound_int(graph: MetricGraph, bound) -> int | None:
    """Largest scaled integer not exceeding ``bound`` (``None`` passes through)."""
    if bound is None:
        return None
    b = as_fraction(bound) * graph.scale
    return b.numerator // b.denominator


def _restricted_search(C: Cycle, p: int, limit: int | None, stop_first: bool):
    """Distances from ``p`` through the graph with C's other vertices as sinks.

    C's edges are skipped and other C vertices are never expanded, so every
    path found meets C only at its ends. Only partners ``q`` with a path
    strictly shorter than ``d_C(p, q)`` are reported. The search never goes
    beyond ``L(C)/2`` (no cycle distance exceeds it) nor beyond ``limit``.
    Returns ``(hits, dist, parent)`` with hits a dict ``q -> length``.
    """
    g = C.graph
    lengths = g.int_lengths
    cyc_edges = C.edge_ids
    on_cycle = C.index_set
    half = C.int_length  # compare 2*d against this
    dist = {p: 0}
    parent = {p: None}
    hits = {}
    if g.uniform:
        unit = lengths[0]
        queue = deque([p])
        while queue:
            i = queue.popleft()
            d = dist[i]
            if i != p and i in on_cycle:
                continue
            nd = d + unit
            if 2 * nd >= half or (limit is not None and nd > limit):
                continue
            for j, e in g.adjacency(i):
                if e in cyc_edges or j in dist:
                    continue
                dist[j] = nd
                parent[j] = i
                if j in on_cycle:
                    if nd < C.int_distance(p, j):
                        hits[j] = nd
                        if stop_first:
                            return hits, dist, parent
                else:
                    queue.append(j)
        return hits, dist, parent
    heap = [(0, p)]
    done = set()
    while heap:
        d, i = heapq.heappop(heap)
        if i in done:
            continue
        done.add(i)
        if i != p and i in on_cycle:
            if d < C.int_distance(p, i):
                hits[i] = d
                if stop_first:
                    return hits, dist, parent
            continue
        for j, e in g.adjacency(i):
            if e in cyc_edges:
                continue
            nd = d + lengths[e]
            if 2 * nd >= half or (limit is not None and nd > limit):
                continue
            if nd < dist.get(j, nd + 1):
                dist[j] = nd
                parent[j] = i
                heapq.heappush(heap, (nd, j))
    return hits, dist, parent


def _lex_path(C: Cycle, p: int, q: int, length: int) -> list[int]:
    """Lexicographically smallest strict path ``p -> q`` of the given length."""
    g = C.graph
    lengths = g.int_lengths
    cyc_edges = C.edge_ids
    on_cycle = C.index_set

    def allowed(i, j, e):
        return e not in cyc_edges and (j == q or j not in on_cycle)

    # distances to q within the allowed subgraph (q as source, p as sink)
    back = {q: 0}
    heap = [(0, q)]
    while heap:
        d, i = heapq.heappop(heap)
        if d > back.get(i, d):
            continue
        if i != q and i in on_cycle:
            continue
        for j, e in g.adjacency(i):
            if e in cyc_edges or (j in on_cycle and j != p):
                continue
            nd = d + lengths[e]
            if nd <= length and nd < back.get(j, nd + 1):
                back[j] = nd
                heapq.heappush(heap, (nd, j))
    path = [p]
    cur, used = p, 0
    while cur != q:
        for j, e in g.adjacency(cur):
            if allowed(cur, j, e) and j in back and used + lengths[e] + back[j] == length:
                if j != q and j in on_cycle:
                    continue
                used += lengths[e]
                cur = j
                path.append(j)
                break
        else:  # pragma: no cover - guarded by the caller's distance
            raise RuntimeError("strict path reconstruction failed")
    return path


def _certificate(C: Cycle, p: int, q: int, length: int) -> ShortcutCertificate:
    g = C.graph
    idx = _lex_path(C, p, q, length)
    verts = tuple(g.vertices[i] for i in idx)
    return ShortcutCertificate(verts[0], verts[-1], GraphPath(verts, Fraction(length, g.scale)), C, True)


def strict_shortcut(graph: MetricGraph, C: Cycle, p, q, max_len=None) -> ShortcutCertificate | None:
    """Shortest path ``p -> q`` avoiding the rest of C, if it is a shortcut.

    Returns ``None`` unless its length is below ``d_C(p, q)`` and, when
    ``max_len`` is given, at most ``max_len``.
    """
    if C.graph is not graph:
        raise ValueError("cycle belongs to a different graph")
    for v in (p, q):
        if v not in C:
            raise VertexNotOnCycle(f"{v!r} is not on the cycle")
    if p == q:
        raise ValueError("p and q must differ")
    i, j = graph.index(p), graph.index(q)
    hits, _, _ = _restricted_search(C, i, _bound_int(graph, max_len), False)
    if j not in hits:
        return None
    return _certificate(C, i, j, hits[j])


def _all_hits(C: Cycle, limit: int | None) -> dict[int, dict[int, int]]:
    return {p: _restricted_search(C, p, limit, False)[0] for p in C.idx}


def shortcut_vertex_set(C: Cycle, max_len=None) -> list[int]:
    """Indices of C's shortcut vertices (no certificates; early exit per vertex)."""
    limit = _bound_int(C.graph, max_len)
    found = set()
    for p in C.idx:
        if p in found:
            continue
        hits, _, _ = _restricted_search(C, p, limit, True)
        if hits:
            found.add(p)
            found.update(hits)
    return sorted(found, key=C.slot)


def shortcut_vertices(graph: MetricGraph, C: Cycle, max_len=None) -> dict:
    """Every shortcut vertex of C with one witnessing strict shortcut.

    The witness is a shortest certificate with the vertex as its start;
    ties go to the lexicographically smallest vertex-index path.
    """
    if C.graph is not graph:
        raise ValueError("cycle belongs to a different graph")
    hits = _all_hits(C, _bound_int(graph, max_len))
    out = {}
    for p in C.idx:
        if not hits[p]:
            continue
        best = min(hits[p].values())
        cands = [_lex_path(C, p, q, best) for q, d in hits[p].items() if d == best]
        path = min(cands)
        verts = tuple(graph.vertices[i] for i in path)
        out[graph.vertices[p]] = ShortcutCertificate(
            verts[0], verts[-1], GraphPath(verts, Fraction(best, graph.scale)), C, True
        )
    return out


def max_gap(positions: Iterable[Fraction], circumference: Fraction) -> Fraction:
    pts = sorted(set(positions))
    if not pts:
        return circumference
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(circumference - pts[-1] + pts[0])
    return max(gaps)


def density_check(C: Cycle | GeodesicTriangle, S: Iterable, eps) -> DensityReport:
    """Whether ``S`` is ``eps``-dense in the intrinsic circle of C.

    ``S`` holds arc-length coordinates (Fractions) or vertices of C.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    L = C.length
    pos = []
    for s in S:
        if isinstance(s, Fraction):
            if not 0 <= s < L:
                raise PointNotOnCycle(f"coordinate {s} outside [0, {L})")
            pos.append(s)
        else:
            pos.append(C.position(s))
    pos = tuple(sorted(set(pos)))
    gap = max_gap(pos, L)
    return DensityReport(pos, gap, bool(pos) and gap < 2 * eps, eps, L)


def _int_gap_dense(int_pos: list[int], circumference: int, two_eps) -> bool:
    if not int_pos:
        return False
    pts = sorted(set(int_pos))
    gap = circumference - pts[-1] + pts[0]
    for a, b in zip(pts, pts[1:]):
        if b - a > gap:
            gap = b - a
    return gap < two_eps


# -- triangles ------------------------------------------------------------------


def triangle_candidates(T: GeodesicTriangle, h) -> tuple[list[int], int]:
    """Candidate walk coordinates (scaled) and the scale factor used.

    Candidates are every vertex occurrence on the walk (corners included)
    plus the multiples of ``h`` in ``[0, L(T))``.
    """
    h = as_fraction(h)
    g = T.graph
    S = math.lcm(g.scale, h.denominator)
    f = S // g.scale
    step = int(h * S)
    total = T.int_length * f
    pts = {p * f for p in T._int_pos[:-1]}
    pts.update(range(0, total, step))
    return sorted(pts), f


def triangle_shortcut_positions(graph: MetricGraph, T: GeodesicTriangle, m, h) -> list[Fraction]:
    """Candidate positions joined to another candidate by a short cut.

    Position ``s`` is returned when some candidate ``t`` has
    ``d_G(pi(s), pi(t)) < d_T(s, t)`` and ``d_G(pi(s), pi(t)) <= m``.
    """
    if T.graph is not graph:
        raise ValueError("triangle belongs to a different graph")
    pos, f = triangle_candidates(T, h)
    fired = _fired_positions(T, pos, f, as_fraction(m))
    denom = graph.scale * f
    return [Fraction(pos[i], denom) for i in fired]


def _fired_positions(T: GeodesicTriangle, pos: list[int], f: int, m: Fraction) -> list[int]:
    g = T.graph
    if T.int_length == 0 or len(pos) < 2:
        return []
    total = T.int_length * f
    oracle = g.oracle
    loc = [T._locate_scaled(s, f) for s in pos]
    ends = sorted({v for _, a, b, _ in loc for v in (a, b)})
    where = {v: k for k, v in enumerate(ends)}
    D = oracle.matrix(rows=ends)[:, ends].astype(object if oracle.int_dtype() == object else np.int64) * f
    ia = np.array([where[a] for _, a, _, _ in loc])
    ib = np.array([where[b] for _, _, b, _ in loc])
    L = np.array([0 if e is None else g.int_lengths[e] * f for e, _, _, _ in loc], dtype=D.dtype)
    oa = np.array([o for _, _, _, o in loc], dtype=D.dtype)
    ob = L - oa
    edge = np.array([-1 if e is None else e for e, _, _, _ in loc])

    dG = np.minimum(
        np.minimum(oa[:, None] + D[ia][:, ia] + oa[None, :], oa[:, None] + D[ia][:, ib] + ob[None, :]),
        np.minimum(ob[:, None] + D[ib][:, ia] + oa[None, :], ob[:, None] + D[ib][:, ib] + ob[None, :]),
    )
    same = (edge[:, None] == edge[None, :]) & (edge[:, None] >= 0)
    if same.any():
        direct = np.abs(oa[:, None] - oa[None, :])
        dG = np.where(same, np.minimum(dG, direct), dG)
    P = np.array(pos, dtype=D.dtype)
    diff = np.abs(P[:, None] - P[None, :])
    dT = np.minimum(diff, total - diff)
    mm = m * g.scale * f
    mlim = mm.numerator // mm.denominator
    ok = (dG < dT) & (dG <= mlim)
    return np.nonzero(ok.any(axis=1))[0].tolist()


def triangle_density(T: GeodesicTriangle, m, h, eps):
    """(fired positions as Fractions, max gap, dense flag) for one triangle."""
    pos, f = triangle_candidates(T, h)
    fired = _fired_positions(T, pos, f, as_fraction(m))
    denom = T.graph.scale * f
    total = T.int_length * f
    pts = [pos[i] for i in fired]
    if pts:
        gap = total - pts[-1] + pts[0]
        for a, b in zip(pts, pts[1:]):
            gap = max(gap, b - a)
    else:
        gap = total
    eps = as_fraction(eps)
    dense = bool(pts) and Fraction(gap, denom) < 2 * eps
    return [Fraction(p, denom) for p in pts], Fraction(gap, denom), dense
