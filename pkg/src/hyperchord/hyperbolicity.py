"""Four-point and Rips (thin triangle) hyperbolicity estimates.

The Rips scan maximises, over corner pairs ``x, y``, third corners ``z``
and sample points ``p`` on geodesics ``[xy]``, the quantity::

    min( max_{g in Geo(y, z)} d(p, g),  max_{g in Geo(z, x)} d(p, g) )

The two inner maxima range over independent side choices, so they are
computed separately. Over all geodesics they are bottleneck ("widest
path") problems on the shortest-path DAG and are solved by dynamic
programming for every sample point at once; with a geodesic cap they are
taken over explicitly enumerated paths instead.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .graph import (
    EdgePoint,
    GraphPath,
    GraphPoint,
    MetricGraph,
    VertexPoint,
    _geodesic_indices,
    as_fraction,
    distance_points,
    is_geodesic,
)


class TriangleError(ValueError):
    pass


class GeodesicTriangle:
    """Three corners and one geodesic per side, read as a closed walk.

    Sides run ``x -> y``, ``y -> z``, ``z -> x``; a bigon has ``y == z``
    and a one-vertex middle side. Positions along the walk are arc-length
    coordinates in ``[0, L(T))`` starting at ``x``; ``d_T`` is the circle
    metric of circumference ``L(T)``.
    """

    def __init__(self, graph: MetricGraph, corners: Sequence, sides: Sequence[Sequence]):
        if len(corners) != 3 or len(sides) != 3:
            raise TriangleError("need three corners and three sides")
        self.graph = graph
        self.corners = tuple(corners)
        x, y, z = self.corners
        ends = [(x, y), (y, z), (z, x)]
        paths = []
        for (a, b), side in zip(ends, sides):
            side = tuple(side.vertices if isinstance(side, GraphPath) else side)
            if side[0] != a or side[-1] != b:
                raise TriangleError(f"side {side!r} does not join {a!r} and {b!r}")
            if len(side) > 1 and not is_geodesic(graph, side):
                raise TriangleError(f"side {side!r} is not a geodesic")
            if len(side) == 1 and a != b:
                raise TriangleError("one-vertex side between distinct corners")
            paths.append(GraphPath(side, graph.path_length(side)))
        self.sides = tuple(paths)

        walk = list(paths[0].vertices) + list(paths[1].vertices[1:]) + list(paths[2].vertices[1:])
        self.walk = tuple(walk)
        idx = [graph.index(v) for v in walk]
        self._walk_idx = idx
        self._walk_edges = [graph.edge_id_idx(a, b) for a, b in zip(idx, idx[1:])]
        pos = [0]
        for e in self._walk_edges:
            pos.append(pos[-1] + graph.int_lengths[e])
        self._int_pos = pos
        self.int_length = pos[-1]
        bounds = [0, len(paths[0].vertices) - 1, len(paths[0].vertices) + len(paths[1].vertices) - 2]
        self._corner_steps = bounds

    @property
    def length(self) -> Fraction:
        return Fraction(self.int_length, self.graph.scale)

    @property
    def is_bigon(self) -> bool:
        x, y, z = self.corners
        return x == y or y == z or z == x

    def corner_positions(self) -> list[Fraction]:
        return [Fraction(self._int_pos[k], self.graph.scale) for k in self._corner_steps]

    def vertex_positions(self) -> list[Fraction]:
        """Coordinates of every vertex occurrence on the walk (closing copy excluded)."""
        return [Fraction(p, self.graph.scale) for p in self._int_pos[:-1]]

    def side_intervals(self) -> list[tuple[Fraction, Fraction]]:
        c = self.corner_positions() + [self.length]
        return [(c[0], c[1]), (c[1], c[2]), (c[2], c[3])]

    def distance(self, s, t) -> Fraction:
        """Circle metric ``d_T`` between two coordinates."""
        diff = abs(as_fraction(s) - as_fraction(t))
        return min(diff, self.length - diff)

    def point_at(self, s) -> GraphPoint:
        """The graph point at walk coordinate ``s``."""
        s = as_fraction(s) % self.length if self.int_length else Fraction(0)
        scaled = s * self.graph.scale
        k = bisect.bisect_right(self._int_pos, scaled) - 1
        k = min(k, len(self._walk_edges) - 1) if self._walk_edges else 0
        if not self._walk_edges or scaled == self._int_pos[k]:
            return VertexPoint(self.walk[k])
        a, b = self.walk[k], self.walk[k + 1]
        return self.graph.point(a, b, (scaled - self._int_pos[k]) / self.graph.scale)

    def _locate_scaled(self, s: int, factor: int):
        """(edge id or None, lower endpoint idx, upper endpoint idx, offset from lower) at scale ``factor``."""
        pos = self._int_pos
        k = bisect.bisect_right(pos, s // factor) - 1
        if k >= len(self._walk_edges):
            k = len(self._walk_edges) - 1
        start = pos[k] * factor
        if s == start:
            v = self._walk_idx[k]
            return None, v, v, 0
        e = self._walk_edges[k]
        a, b = self._walk_idx[k], self._walk_idx[k + 1]
        off = s - start
        lo, hi = self.graph.edge_ends(e)
        if a != lo:
            off = self.graph.int_lengths[e] * factor - off
        return e, lo, hi, off

    def __repr__(self) -> str:
        return f"GeodesicTriangle(corners={self.corners!r}, length={self.length})"


def geodesic_triangle(graph: MetricGraph, x, y, z, sides: Sequence | None = None) -> GeodesicTriangle:
    """Triangle on the given corners; sides default to the first lexicographic geodesics."""
    if sides is None:
        sides = []
        for a, b in ((x, y), (y, z), (z, x)):
            paths, _ = _geodesic_indices(graph, graph.index(a), graph.index(b), 1)
            sides.append([graph.vertices[i] for i in paths[0]])
    return GeodesicTriangle(graph, (x, y, z), sides)


# -- four-point surrogate --------------------------------------------------------


@dataclass(frozen=True)
class FourPointResult:
    value: Fraction
    witness: tuple | None
    sums: tuple[Fraction, Fraction, Fraction] | None


def four_point_delta(graph: MetricGraph) -> FourPointResult:
    """Exact maximum over vertex quadruples of (largest - second largest pairing sum) / 2."""
    n = graph.n
    if n < 4:
        return FourPointResult(Fraction(0), None, None)
    D = graph.oracle.matrix()
    best = -1
    arg = None
    idx = np.arange(n)
    for a in range(n - 3):
        for b in range(a + 1, n - 2):
            c, d = np.triu_indices(n, 1)
            keep = c > b
            c, d = c[keep], d[keep]
            s1 = D[a, b] + D[c, d]
            s2 = D[a, c] + D[b, d]
            s3 = D[a, d] + D[b, c]
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            mid = s1 + s2 + s3 - hi - lo
            gap = hi - mid
            k = int(np.argmax(gap))
            if gap[k] > best:
                best = gap[k]
                arg = (a, b, int(c[k]), int(d[k]))
    del idx
    a, b, c, d = arg
    sums = sorted((D[a, b] + D[c, d], D[a, c] + D[b, d], D[a, d] + D[b, c]), reverse=True)
    verts = graph.vertices
    scale = graph.scale
    return FourPointResult(
        Fraction(int(best), 2 * scale),
        (verts[a], verts[b], verts[c], verts[d]),
        tuple(Fraction(int(s), scale) for s in sums),
    )


# -- thinness of a single triangle ------------------------------------------------


def _grid_offsets(length_scaled: int, step: int) -> range:
    return range(step, length_scaled, step)


def _common_factor(graph: MetricGraph, h: Fraction) -> int:
    """Multiplier taking graph-scaled integers to a scale where ``h`` is integral."""
    S = math.lcm(graph.scale, h.denominator)
    return S // graph.scale


def thinness(T: GeodesicTriangle, h=Fraction(1, 4)):
    """Largest sampled distance from a side point to the union of the other sides.

    Samples are the vertices of each side and, on each of its edges, the
    points at multiples of ``h`` from the lower-indexed endpoint. Distances
    are exact. Returns ``(defect, witness point, side index)``.
    """
    h = as_fraction(h)
    if h <= 0:
        raise ValueError("h must be positive")
    g = T.graph
    f = _common_factor(g, h)
    step = int(h * g.scale * f)
    oracle = g.oracle
    side_idx = [[g.index(v) for v in s.vertices] for s in T.sides]
    side_edges = [
        {g.edge_id_idx(a, b) for a, b in zip(s, s[1:])} for s in side_idx
    ]
    best = -1
    witness = None
    for k in range(3):
        others = set(side_idx[(k + 1) % 3]) | set(side_idx[(k + 2) % 3])
        other_edges = side_edges[(k + 1) % 3] | side_edges[(k + 2) % 3]
        others = sorted(others)
        to_u = {}

        def dist_to_union(i):
            if i not in to_u:
                row = oracle.row(i)
                to_u[i] = min(row[j] for j in others) * f
            return to_u[i]

        for i in side_idx[k]:
            val = dist_to_union(i)
            if val > best:
                best, witness = val, (VertexPoint(g.vertices[i]), k)
        for e in sorted(side_edges[k]):
            if e in other_edges:
                continue
            lo, hi = g.edge_ends(e)
            L = g.int_lengths[e] * f
            da, db = dist_to_union(lo), dist_to_union(hi)
            for t in _grid_offsets(L, step):
                val = min(t + da, L - t + db)
                if val > best:
                    best = val
                    witness = (EdgePoint(e, Fraction(t, g.scale * f)), k)
    return Fraction(best, g.scale * f), witness[0], witness[1]


def distance_to_path(graph: MetricGraph, p: GraphPoint, path: Sequence) -> Fraction:
    """Exact distance from a graph point to the union of a path's edges.

    A point off the path reaches it first through a vertex of the path, so
    the minimum over path vertices is exact; points on a path edge give 0.
    """
    verts = list(path.vertices if isinstance(path, GraphPath) else path)
    graph.validate_point(p)
    if isinstance(p, EdgePoint):
        lo, hi = graph.edge_ends(p.edge)
        a, b = graph.vertices[lo], graph.vertices[hi]
        for u, v in zip(verts, verts[1:]):
            if {u, v} == {a, b}:
                return Fraction(0)
    return min(distance_points(graph, p, VertexPoint(v)) for v in verts)


# -- subdivision at midpoints -----------------------------------------------------


@dataclass(frozen=True)
class Midpoint:
    """Vertex id for the midpoint of edge ``(u, v)`` in a subdivided graph."""

    u: object
    v: object

    def __str__(self) -> str:
        from .graph import vertex_token

        return f"mid({vertex_token(self.u)}|{vertex_token(self.v)})"


def subdivide(graph: MetricGraph) -> MetricGraph:
    """Same metric space with every edge split at its midpoint.

    Original vertices keep their ids and order; midpoints follow in edge
    order as :class:`Midpoint` ids.
    """
    verts = list(graph.vertices)
    mids = []
    edges = []
    for u, v, length in graph.edge_list():
        m = Midpoint(u, v)
        mids.append(m)
        edges.append((u, m, length / 2))
        edges.append((m, v, length / 2))
    return MetricGraph(edges, vertices=verts + mids)


def to_original_point(original: MetricGraph, work: MetricGraph, p: GraphPoint) -> GraphPoint:
    """Map a point of ``work`` (possibly a subdivision of ``original``) back."""
    if work is original:
        return p
    if isinstance(p, VertexPoint):
        v = p.vertex
        if isinstance(v, Midpoint):
            return original.point(v.u, v.v, original.length(v.u, v.v) / 2)
        return p
    lo, hi = work.edge_ends(p.edge)
    a, b = work.vertices[lo], work.vertices[hi]
    # one endpoint is an original vertex, the other a midpoint
    if isinstance(a, Midpoint):
        a, b = b, a
        off = work.edge_length(p.edge) - p.offset
    else:
        off = p.offset
    m = b
    other = m.v if a == m.u else m.u
    return original.point(a, other, off)


# -- Rips scan -------------------------------------------------------------------


@dataclass
class RipsWitness:
    corners: tuple
    triangle: GeodesicTriangle
    point: GraphPoint
    work_point: GraphPoint
    side: int
    value: Fraction


@dataclass
class RipsEstimate:
    delta_low: Fraction
    h: Fraction
    margin: Fraction
    geodesic_cap: int | None
    corner_mode: str
    corners_examined: int
    corners_total: int
    triangles_examined: int
    truncated: bool
    geodesics_truncated: bool
    witness: RipsWitness | None = None
    notes: list = field(default_factory=list)

    @property
    def upper(self) -> Fraction:
        return self.delta_low + self.margin


def _max_corners(cap: int, total: int) -> int:
    """Largest prefix k with C(k+1, 3) (distinct triples plus bigons) <= cap."""
    k = 0
    while k < total and math.comb(k + 2, 3) <= cap:
        k += 1
    return k


class _RipsEngine:
    def __init__(self, graph: MetricGraph, h: Fraction, corners: list[int], geodesic_cap: int | None):
        self.g = graph
        self.h = h
        self.corners = corners
        self.cap = geodesic_cap
        self.f = _common_factor(graph, h)
        self.S = graph.scale * self.f
        self.step = int(h * self.S)
        self.geodesics_truncated = False

    def run(self):
        g = self.g
        oracle = g.oracle
        dtype = oracle.int_dtype()
        K = self.corners
        k = len(K)
        ends = np.array([g.edge_ends(e) for e in range(g.m)], dtype=np.int64).reshape(-1, 2)
        ea, eb = ends[:, 0], ends[:, 1]
        el = np.array(g.int_lengths, dtype=dtype) * self.f
        crow = oracle.matrix(rows=K) * self.f if k else None

        # per pair: sample support (vertices, edges) and the side structure
        pair_info = {}
        sample_vertices = set(K)
        sample_edges = set()
        for a in range(k):
            for b in range(a + 1, k):
                info = self._pair_structure(a, b, crow, ea, eb, el)
                pair_info[(a, b)] = info
                sample_vertices.update(info["nodes"])
                sample_edges.update(info["edges"])

        sv = sorted(sample_vertices)
        vpos = {v: i for i, v in enumerate(sv)}
        int_a, int_b, int_t, int_l, slices = [], [], [], [], {}
        start = len(sv)
        for e in sorted(sample_edges):
            L = g.int_lengths[e] * self.f
            offs = list(_grid_offsets(L, self.step))
            slices[e] = (start + len(int_t), start + len(int_t) + len(offs))
            lo, hi = g.edge_ends(e)
            for t in offs:
                int_a.append(lo)
                int_b.append(hi)
                int_t.append(t)
                int_l.append(L)
        self.sv, self.vpos, self.slices = sv, vpos, slices
        self.int_edge = []
        for e in sorted(sample_edges):
            s0, s1 = slices[e]
            self.int_edge.extend([e] * (s1 - s0))
        self.int_t = int_t
        P = len(sv) + len(int_t)

        rows = oracle.matrix(rows=sv) * self.f if sv else np.zeros((0, g.n), dtype=dtype)
        Wp = np.empty((P, g.n), dtype=dtype)
        Wp[: len(sv)] = rows
        if int_t:
            ra = rows[[vpos[a] for a in int_a]]
            rb = rows[[vpos[b] for b in int_b]]
            t = np.array(int_t, dtype=dtype)[:, None]
            L = np.array(int_l, dtype=dtype)[:, None]
            Wp[len(sv):] = np.minimum(t + ra, (L - t) + rb)
        WT = np.ascontiguousarray(Wp.T)
        self.WT = WT

        F = np.zeros((k, k, P), dtype=dtype)
        for a in range(k):
            F[a, a] = WT[K[a]]
        for (a, b), info in pair_info.items():
            vec = self._side_max(info, WT)
            F[a, b] = vec
            F[b, a] = vec
        self.F = F

        best = -1
        arg = None
        for (a, b), info in pair_info.items():
            S_idx = self._support_indices(info)
            if len(S_idx) == 0:
                continue
            M = np.minimum(F[b][:, S_idx], F[a][:, S_idx])
            flat = int(np.argmax(M))
            val = M.flat[flat]
            if val > best:
                z, s = divmod(flat, M.shape[1])
                best = val
                arg = (a, b, z, int(S_idx[s]))
        if k == 1:
            best = 0
        return best, arg, pair_info

    def _pair_structure(self, a, b, crow, ea, eb, el):
        g = self.g
        du, dv = crow[a], crow[b]
        u, v = self.corners[a], self.corners[b]
        total = du[v]
        if self.cap is None:
            on = du + dv == total
            fwd = on[ea] & on[eb] & (du[ea] + el == du[eb])
            bwd = on[ea] & on[eb] & (du[eb] + el == du[ea])
            nodes = np.nonzero(on)[0]
            order = sorted(nodes.tolist(), key=lambda w: du[w])
            preds = {w: [] for w in order}
            edges = []
            for e in np.nonzero(fwd)[0].tolist():
                preds[int(eb[e])].append((int(ea[e]), e))
                edges.append(e)
            for e in np.nonzero(bwd)[0].tolist():
                preds[int(ea[e])].append((int(eb[e]), e))
                edges.append(e)
            return {"u": u, "v": v, "nodes": order, "edges": sorted(edges), "preds": preds}
        paths, count = _geodesic_indices(g, u, v, self.cap)
        if count > self.cap:
            self.geodesics_truncated = True
        path_edges = [[g.edge_id_idx(p, q) for p, q in zip(path, path[1:])] for path in paths]
        nodes = sorted({w for path in paths for w in path})
        edges = sorted({e for pe in path_edges for e in pe})
        return {"u": u, "v": v, "nodes": nodes, "edges": edges, "paths": paths, "path_edges": path_edges}

    def _support_indices(self, info):
        idx = [self.vpos[w] for w in info["nodes"]]
        for e in info["edges"]:
            s0, s1 = self.slices[e]
            idx.extend(range(s0, s1))
        return np.array(sorted(idx), dtype=np.int64)

    def _side_max(self, info, WT):
        if "paths" in info:
            out = None
            for path, pe in zip(info["paths"], info["path_edges"]):
                vec = WT[path].min(axis=0)
                for e in pe:
                    if e in self.slices:
                        s0, s1 = self.slices[e]
                        vec[s0:s1] = 0
                out = vec if out is None else np.maximum(out, vec)
            return out
        best = {}
        for w in info["nodes"]:
            if w == info["u"]:
                best[w] = WT[w]
                continue
            acc = None
            for p, e in info["preds"][w]:
                vec = best[p]
                sl = self.slices.get(e)
                if sl is not None and sl[1] > sl[0]:
                    vec = vec.copy()
                    vec[sl[0]:sl[1]] = 0
                acc = vec if acc is None else np.maximum(acc, vec)
            best[w] = np.minimum(acc, WT[w])
        return best[info["v"]]

    # witness reconstruction

    def sample_point(self, s: int) -> GraphPoint:
        g = self.g
        if s < len(self.sv):
            return VertexPoint(g.vertices[self.sv[s]])
        j = s - len(self.sv)
        return EdgePoint(self.int_edge[j], Fraction(self.int_t[j], self.S))

    def widest_path(self, u: int, v: int, s: int) -> list[int]:
        """A geodesic u -> v maximising its distance to sample ``s``."""
        g = self.g
        if u == v:
            return [u]
        w_col = self.WT[:, s]
        oracle = g.oracle
        ru, rv = oracle.row(u), oracle.row(v)
        total = ru[v]
        lengths = g.int_lengths
        if self.cap is not None:
            paths, _ = _geodesic_indices(g, u, v, self.cap)
            best, arg = None, None
            for path in paths:
                val = self._dist_to_path(path, s)
                if best is None or val > best:
                    best, arg = val, path
            return arg
        nodes = sorted((w for w in range(g.n) if ru[w] + rv[w] == total), key=ru.__getitem__)
        on = set(nodes)
        seg = None
        if s >= len(self.sv):
            seg = self.int_edge[s - len(self.sv)]
        val = {u: w_col[u]}
        back = {u: None}
        for w in nodes:
            if w == u:
                continue
            cands = []
            for p, e in g.adjacency(w):
                if p in on and ru[p] + lengths[e] == ru[w] and p in val:
                    c = 0 if e == seg else val[p]
                    cands.append((c, -p, p))
            c, _, p = max(cands)
            val[w] = min(c, w_col[w])
            back[w] = p
        path = [v]
        while back[path[-1]] is not None:
            path.append(back[path[-1]])
        return path[::-1]

    def _dist_to_path(self, path, s):
        g = self.g
        val = min(self.WT[w, s] for w in path)
        if s >= len(self.sv):
            e = self.int_edge[s - len(self.sv)]
            if any(g.edge_id_idx(p, q) == e for p, q in zip(path, path[1:])):
                return 0
        return val

    def path_through(self, u: int, v: int, s: int) -> list[int]:
        """A geodesic u -> v containing sample ``s``."""
        g = self.g
        if s < len(self.sv):
            w = self.sv[s]
            first = _geodesic_indices(g, u, w, 1)[0][0]
            second = _geodesic_indices(g, w, v, 1)[0][0]
            return first + second[1:]
        e = self.int_edge[s - len(self.sv)]
        a, b = g.edge_ends(e)
        ru = g.oracle.row(u)
        if ru[a] > ru[b]:
            a, b = b, a
        first = _geodesic_indices(g, u, a, 1)[0][0]
        second = _geodesic_indices(g, b, v, 1)[0][0]
        return first + second


def rips_delta(graph: MetricGraph, h=Fraction(1, 4), geodesic_cap: int | None = None,
               triple_cap: int | None = None, corners="junction") -> RipsEstimate:
    """Sampled Rips constant over geodesic triangles with corners in a finite set.

    ``corners`` is ``"junction"`` (vertices and edge midpoints),
    ``"vertices"``, or an explicit iterable of vertices. ``triple_cap``
    limits the scan to the longest prefix of the corner order whose
    triangle count (distinct triples plus bigons) fits; the estimate is
    then flagged truncated. ``geodesic_cap=None`` covers every geodesic of
    every side; an integer restricts each side to its first ``cap``
    lexicographic geodesics.

    ``delta_low`` is exact for the sampled points of the examined
    triangles and never exceeds the true constant; with the corners and
    geodesics fixed, the supremum over all side points is at most
    ``delta_low + h/2``.
    """
    h = as_fraction(h)
    if h <= 0:
        raise ValueError("h must be positive")
    if isinstance(corners, str):
        if corners == "junction":
            work = subdivide(graph)
            corner_idx = list(range(work.n))
        elif corners == "vertices":
            work = graph
            corner_idx = list(range(graph.n))
        else:
            raise ValueError(f"unknown corner mode {corners!r}")
        mode = corners
    else:
        work = graph
        corner_idx = sorted({graph.index(v) for v in corners})
        mode = "explicit"
    total = len(corner_idx)
    k = total if triple_cap is None else _max_corners(triple_cap, total)
    used = corner_idx[:k]
    engine = _RipsEngine(work, h, used, geodesic_cap)
    best, arg, _ = engine.run()
    delta = Fraction(int(best), engine.S) if best >= 0 else Fraction(0)
    witness = None
    if arg is not None and best > 0:
        a, b, z, s = arg
        x, y, zz = used[a], used[b], used[z]
        side_xy = engine.path_through(x, y, s)
        side_yz = engine.widest_path(y, zz, s)
        side_zx = engine.widest_path(zz, x, s)
        verts = work.vertices
        tri = GeodesicTriangle(
            work,
            (verts[x], verts[y], verts[zz]),
            [[verts[i] for i in side] for side in (side_xy, side_yz, side_zx)],
        )
        wp = engine.sample_point(s)
        witness = RipsWitness(
            corners=tuple(to_original_point(graph, work, VertexPoint(verts[i])) for i in (x, y, zz)),
            triangle=tri,
            point=to_original_point(graph, work, wp),
            work_point=wp,
            side=0,
            value=delta,
        )
    return RipsEstimate(
        delta_low=delta,
        h=h,
        margin=h / 2,
        geodesic_cap=geodesic_cap,
        corner_mode=mode,
        corners_examined=k,
        corners_total=total,
        triangles_examined=math.comb(k + 1, 3),
        truncated=k < total or engine.geodesics_truncated,
        geodesics_truncated=engine.geodesics_truncated,
        witness=witness,
    )
