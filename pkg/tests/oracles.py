"""Brute-force reference implementations, independent of the package algorithms.

They only read vertex/edge data off a MetricGraph and recompute everything
with networkx or plain loops over Fractions.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import networkx as nx
import numpy as np

from hyperchord.graph import EdgePoint, MetricGraph, VertexPoint

LENGTHS = [Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2), Fraction(1, 3), Fraction(5, 4), Fraction(3)]


def atlas_graphs(max_nodes=6):
    """Connected unit graphs from the graph atlas with 2..max_nodes vertices."""
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if 2 <= n <= max_nodes and nx.is_connected(G):
            out.append(MetricGraph([(u, v, 1) for u, v in G.edges()], sorted(G.nodes())))
    return out


def random_weighted_graph(rng: random.Random, max_nodes=8, unit=False) -> MetricGraph:
    n = rng.randint(2, max_nodes)
    edges = {}
    for i in range(1, n):
        edges[(rng.randrange(i), i)] = None
    extra = rng.randint(0, n + 2)
    for _ in range(extra):
        a, b = rng.sample(range(n), 2)
        edges[(min(a, b), max(a, b))] = None
    return MetricGraph(
        [(a, b, 1 if unit else rng.choice(LENGTHS)) for a, b in edges], list(range(n))
    )


def random_weighted_graphs(count=200, seed=12345, max_nodes=8, unit=False):
    rng = random.Random(seed)
    return [random_weighted_graph(rng, max_nodes, unit) for _ in range(count)]


def to_nx(g: MetricGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    for u, v, w in g.edge_list():
        G.add_edge(u, v, weight=w)
    return G


def floyd_warshall(g: MetricGraph) -> dict:
    """All-pairs distances over Fractions by the triple loop."""
    V = list(g.vertices)
    inf = None
    d = {u: {v: (Fraction(0) if u == v else inf) for v in V} for u in V}
    for u, v, w in g.edge_list():
        d[u][v] = d[v][u] = w
    for k in V:
        for i in V:
            dik = d[i][k]
            if dik is None:
                continue
            for j in V:
                dkj = d[k][j]
                if dkj is None:
                    continue
                if d[i][j] is None or dik + dkj < d[i][j]:
                    d[i][j] = dik + dkj
    return d


def four_point(g: MetricGraph) -> Fraction:
    d = floyd_warshall(g)
    best = Fraction(0)
    for a, b, c, e in combinations(g.vertices, 4):
        s = sorted([d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]], reverse=True)
        best = max(best, (s[0] - s[1]) / 2)
    return best


def simple_cycles(g: MetricGraph) -> set[frozenset]:
    """Every simple cycle as the frozenset of its edges, by permutation search."""
    V = list(g.vertices)
    out = set()
    for r in range(3, len(V) + 1):
        for sub in combinations(V, r):
            first = sub[0]
            for perm in permutations(sub[1:]):
                if perm[0] > perm[-1]:
                    continue
                seq = (first,) + perm
                if all(g.has_edge(seq[i], seq[(i + 1) % r]) for i in range(r)):
                    out.add(frozenset(frozenset((seq[i], seq[(i + 1) % r])) for i in range(r)))
    return out


def cycle_edge_set(C) -> frozenset:
    vs = C.vertices
    return frozenset(frozenset((vs[i], vs[(i + 1) % len(vs)])) for i in range(len(vs)))


def cycle_metric(C, a, b) -> Fraction:
    """d_C by walking the two arcs explicitly."""
    vs = list(C.vertices)
    g = C.graph
    i, j = vs.index(a), vs.index(b)
    k = len(vs)
    fwd = sum((g.length(vs[t % k], vs[(t + 1) % k]) for t in range(i, i + (j - i) % k)), Fraction(0))
    total = sum((g.length(vs[t], vs[(t + 1) % k]) for t in range(k)), Fraction(0))
    return min(fwd, total - fwd)


def strict_shortcut_length(C, p, q):
    """Shortest path p -> q avoiding the rest of C and C's edges, by simple-path search."""
    g = C.graph
    G = to_nx(g)
    others = [v for v in C.vertices if v not in (p, q)]
    G.remove_nodes_from(others)
    vs = C.vertices
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        if G.has_edge(a, b):
            G.remove_edge(a, b)
    best = None
    for path in nx.all_simple_paths(G, p, q):
        L = sum((g.length(a, b) for a, b in zip(path, path[1:])), Fraction(0))
        if best is None or L < best:
            best = L
    return best


def _subdivided(g: MetricGraph, points):
    """networkx graph with the given points inserted as extra nodes."""
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    per_edge = {}
    names = []
    for k, p in enumerate(points):
        if isinstance(p, VertexPoint):
            names.append(p.vertex)
        else:
            name = ("pt", k)
            per_edge.setdefault(p.edge, []).append((p.offset, name))
            names.append(name)
    for e in range(g.m):
        lo, hi = g.edge_ends(e)
        a, b = g.vertices[lo], g.vertices[hi]
        L = g.edge_length(e)
        stops = sorted(per_edge.get(e, []), key=lambda t: t[0])
        prev, prev_off = a, Fraction(0)
        for off, name in stops:
            if off == prev_off:
                G.add_edge(prev, name, weight=Fraction(0))
            else:
                G.add_edge(prev, name, weight=off - prev_off)
            prev, prev_off = name, off
        G.add_edge(prev, b, weight=L - prev_off)
    return G, names


def point_distance(g: MetricGraph, p, q) -> Fraction:
    """Minimum over all simple paths between the two points in the subdivided graph."""
    G, (a, b) = _subdivided(g, [p, q])
    if a == b:
        return Fraction(0)
    best = None
    for path in nx.all_simple_paths(G, a, b):
        L = sum((G[x][y]["weight"] for x, y in zip(path, path[1:])), Fraction(0))
        if best is None or L < best:
            best = L
    return best


def random_point(rng: random.Random, g: MetricGraph):
    if rng.random() < 0.3:
        return VertexPoint(rng.choice(g.vertices))
    e = rng.randrange(g.m)
    L = g.edge_length(e)
    off = L * Fraction(rng.randint(1, 7), 8)
    return EdgePoint(e, off)


def fine_rips(n: int, pieces: int = 16) -> Fraction:
    """Rips constant of the unit n-cycle at resolution 1/pieces.

    The cycle is subdivided into 1/pieces steps; corners range over the
    quarter points, every geodesic side combination is tried, and for every
    subdivision point on a side the distance to the other two sides is the
    minimum over their point sets.
    """
    N = n * pieces
    G = nx.cycle_graph(N)
    D = np.array([[min(abs(i - j), N - abs(i - j)) for j in range(N)] for i in range(N)])
    corners = list(range(0, N, pieces // 4))
    best = 0

    def geos(a, b):
        return [list(p) for p in nx.all_shortest_paths(G, a, b)] if a != b else [[a]]

    for x, y, z in combinations(corners, 3):
        for s1 in geos(x, y):
            for s2 in geos(y, z):
                for s3 in geos(z, x):
                    sides = [s1, s2, s3]
                    for k in range(3):
                        rest = sides[(k + 1) % 3] + sides[(k + 2) % 3]
                        val = D[np.ix_(sides[k], rest)].min(axis=1).max()
                        best = max(best, val)
    for x, y in combinations(corners, 2):
        gs = geos(x, y)
        for s1 in gs:
            for s2 in gs:
                val = D[np.ix_(s1, s2)].min(axis=1).max()
                best = max(best, val)
    return Fraction(int(best), pieces)


def brute_thinness(T, step: Fraction) -> Fraction:
    """Thinness of a triangle by discretising every side at ``step``."""
    g = T.graph
    sides = [list(s.vertices) for s in T.sides]

    def side_points(vs):
        pts = [VertexPoint(v) for v in vs]
        for a, b in zip(vs, vs[1:]):
            e = g.edge_id(a, b)
            L = g.edge_length(e)
            t = step
            while t < L:
                pts.append(g.point(a, b, t))
                t += step
        return pts

    pts = [side_points(s) for s in sides]
    from hyperchord.graph import distance_points

    best = Fraction(0)
    for k in range(3):
        rest = pts[(k + 1) % 3] + pts[(k + 2) % 3]
        for p in pts[k]:
            best = max(best, min(distance_points(g, p, q) for q in rest))
    return best


def fine_rips_graph(g: MetricGraph, pieces: int = 4) -> Fraction:
    """Rips scan of a unit graph by explicit subdivision.

    Every edge is cut into ``pieces`` unit steps of length 1/pieces. Corners
    are the original vertices and edge midpoints; every combination of
    geodesic sides is enumerated and every subdivision node on a side is
    measured against all nodes of the other two sides.
    """
    assert pieces % 2 == 0
    G = nx.Graph()
    corners = list(g.vertices)
    for u, v, w in g.edge_list():
        assert w == 1
        chain = [u] + [("sub", u, v, t) for t in range(1, pieces)] + [v]
        nx.add_path(G, chain)
        corners.append(("sub", u, v, pieces // 2))
    nodes = list(G.nodes())
    at = {x: i for i, x in enumerate(nodes)}
    D = np.array([[0] * len(nodes) for _ in nodes])
    for s, row in nx.all_pairs_shortest_path_length(G):
        for t, d in row.items():
            D[at[s], at[t]] = d
    memo = {}

    def geos(a, b):
        if (a, b) not in memo:
            memo[(a, b)] = [[at[x] for x in p] for p in nx.all_shortest_paths(G, a, b)] if a != b else [[at[a]]]
        return memo[(a, b)]

    best = 0
    triples = list(combinations(corners, 3)) + [(x, y, y) for x, y in combinations(corners, 2)]
    for x, y, z in triples:
        for s1 in geos(x, y):
            for s2 in geos(y, z):
                for s3 in geos(z, x):
                    sides = [s1, s2, s3]
                    for k in range(3):
                        rest = sides[(k + 1) % 3] + sides[(k + 2) % 3]
                        best = max(best, D[np.ix_(sides[k], rest)].min(axis=1).max())
    return Fraction(int(best), pieces)
