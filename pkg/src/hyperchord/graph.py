"""Finite metric graphs with exact rational edge lengths.

Lengths are stored twice: as :class:`fractions.Fraction` for the public
surface and as integers scaled by the common denominator of all lengths.
Every internal shortest-path computation runs on the scaled integers, so
comparisons such as ``L(sigma) < d_C(p, q)`` are decided exactly and fast.
"""

from __future__ import annotations

import heapq
import math
import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import numpy as np

Vertex = Hashable


class GraphError(ValueError):
    """Base class for invalid graph input."""


class DisconnectedGraph(GraphError):
    pass


class NonPositiveLength(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class InvalidPoint(GraphError):
    pass


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"num/den"`` strings; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"float {value!r} is not exact; pass a Fraction or 'num/den' string")
    return Fraction(value)


@dataclass(frozen=True)
class GraphPath:
    """A path along whole edges, given by its vertex sequence."""

    vertices: tuple
    length: Fraction

    @property
    def edges(self) -> list[tuple]:
        return list(zip(self.vertices, self.vertices[1:]))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class VertexPoint:
    vertex: Vertex


@dataclass(frozen=True)
class EdgePoint:
    """Interior point of edge ``edge`` (an edge index).

    ``offset`` is measured from the endpoint with the lower vertex index and
    satisfies ``0 < offset < L(edge)``.
    """

    edge: int
    offset: Fraction


GraphPoint = VertexPoint | EdgePoint


class MetricGraph:
    """Immutable connected simple graph with positive rational edge lengths.

    Vertex ids are opaque hashables; their order of first appearance fixes
    the vertex index used for every deterministic ordering in the package.
    """

    def __init__(self, edges: Iterable[tuple], vertices: Sequence[Vertex] | None = None):
        order: list = list(vertices) if vertices is not None else []
        index: dict = {}
        for v in order:
            if v in index:
                raise GraphError(f"vertex {v!r} listed twice")
            index[v] = len(index)
        raw = []
        for item in edges:
            u, v, length = item
            length = as_fraction(length)
            if length <= 0:
                raise NonPositiveLength(f"edge ({u!r}, {v!r}) has length {length}")
            if u == v:
                raise SelfLoop(f"self-loop at {u!r}")
            for w in (u, v):
                if w not in index:
                    index[w] = len(order)
                    order.append(w)
            raw.append((index[u], index[v], length))

        self._vertices = tuple(order)
        self._index = index
        edge_index: dict[tuple[int, int], int] = {}
        lo_hi = []
        lengths = []
        for i, j, length in raw:
            key = (i, j) if i < j else (j, i)
            if key in edge_index:
                raise DuplicateEdge(f"duplicate edge ({order[i]!r}, {order[j]!r})")
            edge_index[key] = len(lo_hi)
            lo_hi.append(key)
            lengths.append(length)
        self._edge_index = edge_index
        self._edge_ends = tuple(lo_hi)
        self._lengths = tuple(lengths)

        self.scale = math.lcm(*(f.denominator for f in lengths)) if lengths else 1
        self.int_lengths = tuple(int(f * self.scale) for f in lengths)
        self.uniform = len(set(self.int_lengths)) <= 1

        adj: list[list[tuple[int, int]]] = [[] for _ in order]
        for e, (i, j) in enumerate(lo_hi):
            adj[i].append((j, e))
            adj[j].append((i, e))
        for row in adj:
            row.sort()
        self._adj = tuple(tuple(row) for row in adj)

        if len(order) > 1 and not self._is_connected():
            raise DisconnectedGraph(f"graph with {len(order)} vertices is not connected")
        if not order:
            raise GraphError("empty graph")
        self._oracle: DistanceOracle | None = None
        self._lock = threading.Lock()

    def _is_connected(self) -> bool:
        seen = [False] * len(self._vertices)
        seen[0] = True
        stack = [0]
        while stack:
            i = stack.pop()
            for j, _ in self._adj[i]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        return all(seen)

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edge_ends)

    def index(self, v: Vertex) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._index

    def edge_list(self) -> list[tuple]:
        """Edges as ``(u, v, length)`` with ``u`` the lower-index endpoint."""
        return [
            (self._vertices[i], self._vertices[j], f)
            for (i, j), f in zip(self._edge_ends, self._lengths)
        ]

    def edge_ends(self, e: int) -> tuple[int, int]:
        return self._edge_ends[e]

    def edge_length(self, e: int) -> Fraction:
        return self._lengths[e]

    def edge_id(self, u: Vertex, v: Vertex) -> int | None:
        i, j = self.index(u), self.index(v)
        return self._edge_index.get((i, j) if i < j else (j, i))

    def edge_id_idx(self, i: int, j: int) -> int | None:
        return self._edge_index.get((i, j) if i < j else (j, i))

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return self.edge_id(u, v) is not None

    def length(self, u: Vertex, v: Vertex) -> Fraction:
        e = self.edge_id(u, v)
        if e is None:
            raise KeyError(f"no edge ({u!r}, {v!r})")
        return self._lengths[e]

    def neighbors(self, v: Vertex) -> list:
        return [self._vertices[j] for j, _ in self._adj[self.index(v)]]

    def adjacency(self, i: int) -> tuple[tuple[int, int], ...]:
        """``(neighbor index, edge index)`` pairs of vertex index ``i``, sorted."""
        return self._adj[i]

    def degree(self, v: Vertex) -> int:
        return len(self._adj[self.index(v)])

    def to_fraction(self, scaled: int) -> Fraction:
        return Fraction(scaled, self.scale)

    def path_length(self, vertices: Sequence[Vertex]) -> Fraction:
        return sum((self.length(a, b) for a, b in zip(vertices, vertices[1:])), Fraction(0))

    def point(self, u: Vertex, v: Vertex, offset) -> GraphPoint:
        """Canonical point at distance ``offset`` from ``u`` along edge ``uv``."""
        offset = as_fraction(offset)
        e = self.edge_id(u, v)
        if e is None:
            raise InvalidPoint(f"no edge ({u!r}, {v!r})")
        length = self._lengths[e]
        if offset < 0 or offset > length:
            raise InvalidPoint(f"offset {offset} outside [0, {length}]")
        if offset == 0:
            return VertexPoint(u)
        if offset == length:
            return VertexPoint(v)
        if self.index(u) > self.index(v):
            offset = length - offset
        return EdgePoint(e, offset)

    def validate_point(self, p: GraphPoint) -> None:
        if isinstance(p, VertexPoint):
            if p.vertex not in self._index:
                raise InvalidPoint(f"unknown vertex {p.vertex!r}")
        elif isinstance(p, EdgePoint):
            if not 0 <= p.edge < self.m:
                raise InvalidPoint(f"unknown edge index {p.edge}")
            if not 0 < p.offset < self._lengths[p.edge]:
                raise InvalidPoint(f"offset {p.offset} not strictly inside edge {p.edge}")
        else:
            raise InvalidPoint(f"not a graph point: {p!r}")

    @property
    def oracle(self) -> DistanceOracle:
        """Lazily filled distance oracle shared by all queries on this graph."""
        if self._oracle is None:
            with self._lock:
                if self._oracle is None:
                    self._oracle = DistanceOracle(self)
        return self._oracle

    def __repr__(self) -> str:
        return f"MetricGraph(n={self.n}, m={self.m})"


def build_graph(edges: Iterable[tuple], vertices: Sequence[Vertex] | None = None) -> MetricGraph:
    """Build a :class:`MetricGraph` from ``(u, v, length)`` triples."""
    return MetricGraph(edges, vertices)


def single_source(graph: MetricGraph, source: int, blocked=None, sinks=None,
                  skip_edges=None, bound: int | None = None) -> dict[int, int]:
    """Scaled shortest-path distances from vertex index ``source``.

    ``blocked`` vertices are never entered, ``sinks`` are entered but not
    expanded, ``skip_edges`` (edge indices) are ignored and exploration
    stops at scaled distance ``bound``. Used for restricted searches; the
    plain all-vertices case goes through :class:`DistanceOracle`.
    """
    lengths = graph.int_lengths
    dist = {source: 0}
    heap = [(0, source)]
    done = set()
    while heap:
        d, i = heapq.heappop(heap)
        if i in done:
            continue
        done.add(i)
        if bound is not None and d > bound:
            break
        if sinks is not None and i in sinks and i != source:
            continue
        for j, e in graph.adjacency(i):
            if blocked is not None and j in blocked:
                continue
            if skip_edges is not None and e in skip_edges:
                continue
            nd = d + lengths[e]
            if bound is not None and nd > bound:
                continue
            if nd < dist.get(j, nd + 1):
                dist[j] = nd
                heapq.heappush(heap, (nd, j))
    return dist


class DistanceOracle:
    """All-pairs vertex distances, filled one source row at a time.

    Rows hold scaled integers (multiply by ``1/graph.scale`` for the true
    value). Rows are computed on first use and cached; concurrent readers
    are safe.
    """

    def __init__(self, graph: MetricGraph):
        self.graph = graph
        self._rows: list[list[int] | None] = [None] * graph.n
        self._lock = threading.Lock()
        self._matrix = None

    def row(self, i: int) -> list[int]:
        r = self._rows[i]
        if r is None:
            r = self._compute(i)
            with self._lock:
                self._rows[i] = r
        return r

    def _compute(self, s: int) -> list[int]:
        g = self.graph
        n = g.n
        if g.uniform and g.m:
            step = g.int_lengths[0]
            dist = [-1] * n
            dist[s] = 0
            queue = deque([s])
            while queue:
                i = queue.popleft()
                d = dist[i] + step
                for j, _ in g.adjacency(i):
                    if dist[j] < 0:
                        dist[j] = d
                        queue.append(j)
            return dist
        lengths = g.int_lengths
        dist = [None] * n
        dist[s] = 0
        heap = [(0, s)]
        done = [False] * n
        while heap:
            d, i = heapq.heappop(heap)
            if done[i]:
                continue
            done[i] = True
            for j, e in g.adjacency(i):
                nd = d + lengths[e]
                cur = dist[j]
                if cur is None or nd < cur:
                    dist[j] = nd
                    heapq.heappush(heap, (nd, j))
        return dist

    def compute_all(self) -> DistanceOracle:
        for i in range(self.graph.n):
            self.row(i)
        return self

    def scaled(self, i: int, j: int) -> int:
        return self.row(i)[j]

    def distance(self, u: Vertex, v: Vertex) -> Fraction:
        g = self.graph
        return Fraction(self.row(g.index(u))[g.index(v)], g.scale)

    def int_dtype(self):
        """numpy dtype able to hold sums of a few scaled distances exactly."""
        total = sum(self.graph.int_lengths) * 8
        return np.int64 if total < 2**62 else object

    def matrix(self, rows: Sequence[int] | None = None) -> np.ndarray:
        """Scaled distance rows as a numpy array (all rows by default)."""
        if rows is None:
            if self._matrix is None:
                self.compute_all()
                self._matrix = np.array(self._rows, dtype=self.int_dtype())
            return self._matrix
        return np.array([self.row(i) for i in rows], dtype=self.int_dtype())

    def predecessors(self, source: int, target: int) -> list[int]:
        """Neighbors of ``target`` preceding it on a shortest path from ``source``."""
        row = self.row(source)
        lengths = self.graph.int_lengths
        return [j for j, e in self.graph.adjacency(target) if row[j] + lengths[e] == row[target]]

    def predecessor_dag(self, u: Vertex, v: Vertex) -> dict:
        """Shortest-path DAG from ``u`` to ``v``: vertex -> list of predecessors."""
        g = self.graph
        i, j = g.index(u), g.index(v)
        ru, rv = self.row(i), self.row(j)
        total = ru[j]
        dag = {}
        for w in range(g.n):
            if ru[w] + rv[w] == total:
                dag[g.vertices[w]] = [
                    g.vertices[p] for p in self.predecessors(i, w) if ru[p] + rv[p] == total
                ]
        return dag

    def check_metric(self) -> bool:
        """Symmetry, identity and triangle inequality on the full table."""
        d = self.matrix()
        n = d.shape[0]
        if not (d == d.T).all():
            return False
        if any(d[i, i] != 0 for i in range(n)) or ((d == 0).sum() != n):
            return False
        for k in range(n):
            if (d > d[:, [k]] + d[[k], :]).any():
                return False
        return True


def all_pairs_distances(graph: MetricGraph) -> DistanceOracle:
    """The graph's distance oracle with every row computed."""
    return graph.oracle.compute_all()


def distance_points(graph: MetricGraph, p: GraphPoint, q: GraphPoint) -> Fraction:
    """Exact distance between two points of the metric graph."""
    graph.validate_point(p)
    graph.validate_point(q)
    if p == q:
        return Fraction(0)
    oracle = graph.oracle

    def exits(x):
        if isinstance(x, VertexPoint):
            return [(graph.index(x.vertex), Fraction(0))]
        a, b = graph.edge_ends(x.edge)
        return [(a, x.offset), (b, graph.edge_length(x.edge) - x.offset)]

    best = None
    for i, di in exits(p):
        row = oracle.row(i)
        for j, dj in exits(q):
            cand = di + Fraction(row[j], graph.scale) + dj
            if best is None or cand < best:
                best = cand
    if isinstance(p, EdgePoint) and isinstance(q, EdgePoint) and p.edge == q.edge:
        best = min(best, abs(p.offset - q.offset))
    return best


def geodesics_between(graph: MetricGraph, u: Vertex, v: Vertex, cap: int = 64):
    """Shortest ``u``-``v`` paths in lexicographic vertex-index order.

    Returns ``(paths, truncated)``; ``truncated`` is set when more than
    ``cap`` geodesics exist.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    i, j = graph.index(u), graph.index(v)
    paths, total = _geodesic_indices(graph, i, j, cap)
    verts = graph.vertices
    d = Fraction(graph.oracle.row(i)[j], graph.scale)
    return [GraphPath(tuple(verts[k] for k in p), d) for p in paths], total > cap


def count_geodesics(graph: MetricGraph, u: Vertex, v: Vertex) -> int:
    return _count_geodesics(graph, graph.index(u), graph.index(v))


def _count_geodesics(graph: MetricGraph, i: int, j: int) -> int:
    oracle = graph.oracle
    ri = oracle.row(i)
    order = sorted((w for w in range(graph.n) if ri[w] + oracle.row(j)[w] == ri[j]), key=ri.__getitem__)
    count = {i: 1}
    rj = oracle.row(j)
    lengths = graph.int_lengths
    for w in order:
        if w == i:
            continue
        count[w] = sum(
            count.get(p, 0)
            for p, e in graph.adjacency(w)
            if ri[p] + lengths[e] == ri[w] and ri[p] + rj[p] == ri[j]
        )
    return count.get(j, 0)


def _geodesic_indices(graph: MetricGraph, i: int, j: int, cap: int) -> tuple[list[list[int]], int]:
    oracle = graph.oracle
    ri, rj = oracle.row(i), oracle.row(j)
    total = ri[j]
    lengths = graph.int_lengths
    if i == j:
        return [[i]], 1
    paths: list[list[int]] = []
    path = [i]
    stack = [iter(graph.adjacency(i))]
    while stack and len(paths) < cap:
        cur = path[-1]
        for w, e in stack[-1]:
            if ri[cur] + lengths[e] == ri[w] and ri[w] + rj[w] == total:
                if w == j:
                    paths.append(path + [j])
                    if len(paths) >= cap:
                        break
                    continue
                path.append(w)
                stack.append(iter(graph.adjacency(w)))
                break
        else:
            stack.pop()
            path.pop()
    count = len(paths) if len(paths) < cap else _count_geodesics(graph, i, j)
    return paths, count


def is_geodesic(graph: MetricGraph, vertices: Sequence[Vertex]) -> bool:
    for a, b in zip(vertices, vertices[1:]):
        if not graph.has_edge(a, b):
            return False
    return graph.path_length(vertices) == graph.oracle.distance(vertices[0], vertices[-1])


# -- text interchange format -------------------------------------------------


def vertex_token(v: Vertex) -> str:
    """Whitespace-free token for a vertex id (tuples become ``a,b,...``)."""
    if isinstance(v, tuple):
        tok = ",".join(vertex_token(x) for x in v)
    else:
        tok = str(v)
    if not tok or any(c.isspace() for c in tok) or tok.startswith("#"):
        raise GraphError(f"vertex {v!r} has no valid token form")
    return tok


def format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_graph(graph: MetricGraph) -> str:
    """Canonical text form: one ``u v length`` line per edge, in edge order.

    Each edge is written with the endpoint seen first in the text on the
    left, so parsing the text back gives the same vertex order and the
    output is a fixed point of ``format_graph(parse_graph(...))``.
    """
    rank: dict[int, int] = {}
    verts = graph.vertices
    lines = []
    for e in range(graph.m):
        i, j = graph.edge_ends(e)
        for w in (i, j):
            if w not in rank:
                rank[w] = len(rank)
        if rank[j] < rank[i]:
            i, j = j, i
        lines.append(f"{vertex_token(verts[i])} {vertex_token(verts[j])} {format_fraction(graph.edge_length(e))}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> MetricGraph:
    """Parse the edge-list text format; vertex ids become strings."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'u v length', got {line!r}")
        u, v, tok = parts
        try:
            length = Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise GraphError(f"line {lineno}: bad length {tok!r}") from None
        if "." in tok or "e" in tok.lower():
            raise GraphError(f"line {lineno}: length {tok!r} must be an integer or num/den")
        edges.append((u, v, length))
    return MetricGraph(edges)


def read_graph(path) -> MetricGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(graph: MetricGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(graph))
