"""Simple cycles, their intrinsic length metric, and budgeted enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .graph import MetricGraph, as_fraction


class CycleError(ValueError):
    pass


class NotACycle(CycleError):
    pass


class EdgeMissing(CycleError):
    pass


class PointNotOnCycle(CycleError):
    pass


class Cycle:
    """A simple cycle of a :class:`MetricGraph` in canonical orientation.

    Canonical form starts at the vertex with the smallest index and walks
    toward the smaller-indexed of its two cycle neighbours. Arc ``i`` joins
    ``vertices[i]`` and ``vertices[i + 1]`` (wrapping around).
    """

    __slots__ = ("graph", "idx", "int_arcs", "int_length", "int_positions", "_pos_of", "__dict__")

    def __init__(self, graph: MetricGraph, idx: Sequence[int], int_arcs: Sequence[int]):
        self.graph = graph
        self.idx = tuple(idx)
        self.int_arcs = tuple(int_arcs)
        pos = [0]
        for a in self.int_arcs[:-1]:
            pos.append(pos[-1] + a)
        self.int_positions = tuple(pos)
        self.int_length = pos[-1] + self.int_arcs[-1]
        self._pos_of = {v: k for k, v in enumerate(self.idx)}

    @cached_property
    def vertices(self) -> tuple:
        verts = self.graph.vertices
        return tuple(verts[i] for i in self.idx)

    @property
    def length(self) -> Fraction:
        return Fraction(self.int_length, self.graph.scale)

    @property
    def arcs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.graph.scale) for a in self.int_arcs)

    @property
    def positions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(p, self.graph.scale) for p in self.int_positions)

    def __len__(self) -> int:
        return len(self.idx)

    def __contains__(self, v) -> bool:
        return self.graph.has_vertex(v) and self.graph.index(v) in self._pos_of

    def __eq__(self, other) -> bool:
        return isinstance(other, Cycle) and other.graph is self.graph and other.idx == self.idx

    def __hash__(self) -> int:
        return hash(self.idx)

    def __repr__(self) -> str:
        return f"Cycle({list(self.vertices)!r}, length={self.length})"

    def slot(self, i: int) -> int:
        """Position in ``idx`` of vertex index ``i`` (raises if absent)."""
        try:
            return self._pos_of[i]
        except KeyError:
            raise PointNotOnCycle(f"vertex index {i} not on cycle") from None

    def has_index(self, i: int) -> bool:
        return i in self._pos_of

    def position(self, v) -> Fraction:
        """Arc-length coordinate of vertex ``v`` in ``[0, L(C))``."""
        if v not in self:
            raise PointNotOnCycle(f"{v!r} is not on the cycle")
        return Fraction(self.int_positions[self._pos_of[self.graph.index(v)]], self.graph.scale)

    def int_distance(self, a: int, b: int) -> int:
        """Scaled ``d_C`` between two vertex indices on the cycle."""
        s = self.int_positions[self._pos_of[a]]
        t = self.int_positions[self._pos_of[b]]
        diff = s - t if s >= t else t - s
        other = self.int_length - diff
        return diff if diff <= other else other

    @cached_property
    def edge_ids(self) -> frozenset[int]:
        g = self.graph
        k = len(self.idx)
        return frozenset(g.edge_id_idx(self.idx[i], self.idx[(i + 1) % k]) for i in range(k))

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(self.idx)


@dataclass(frozen=True)
class CycleBudget:
    """Enumeration limits.

    ``max_length`` bounds the scope (only cycles no longer than it are
    considered); ``max_cycles`` is a work limit whose exhaustion marks the
    enumeration as truncated. ``vertices`` optionally restricts cycles to a
    vertex subset.
    """

    max_cycles: int | None = None
    max_length: Fraction | None = None
    vertices: frozenset | None = None

    def __post_init__(self):
        if self.max_cycles is not None and self.max_cycles <= 0:
            raise ValueError("max_cycles must be positive")
        if self.max_length is not None:
            object.__setattr__(self, "max_length", as_fraction(self.max_length))
            if self.max_length <= 0:
                raise ValueError("max_length must be positive")
        if self.vertices is not None:
            object.__setattr__(self, "vertices", frozenset(self.vertices))


def canonical_order(idx: Sequence[int]) -> tuple[int, ...]:
    k = len(idx)
    r = min(range(k), key=idx.__getitem__)
    rot = tuple(idx[r:]) + tuple(idx[:r])
    if rot[1] > rot[-1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def cycle_from_vertices(graph: MetricGraph, vertices: Sequence) -> Cycle:
    """Validate a closed vertex sequence and return it as a canonical Cycle.

    A trailing repetition of the first vertex is accepted and dropped.
    """
    seq = list(vertices)
    if len(seq) >= 2 and seq[0] == seq[-1]:
        seq = seq[:-1]
    if len(seq) < 3:
        raise NotACycle(f"a cycle needs at least 3 distinct vertices, got {list(vertices)!r}")
    if len(set(seq)) != len(seq):
        raise NotACycle("vertices repeat")
    for v in seq:
        if not graph.has_vertex(v):
            raise EdgeMissing(f"unknown vertex {v!r}")
    idx = canonical_order([graph.index(v) for v in seq])
    arcs = []
    for a, b in zip(idx, idx[1:] + idx[:1]):
        e = graph.edge_id_idx(a, b)
        if e is None:
            verts = graph.vertices
            raise EdgeMissing(f"no edge ({verts[a]!r}, {verts[b]!r})")
        arcs.append(graph.int_lengths[e])
    return Cycle(graph, idx, arcs)


def iter_cycles(graph: MetricGraph, budget: CycleBudget | None = None) -> Iterator[Cycle]:
    """Yield simple cycles in canonical order, pruned by the length bound.

    Order: by smallest vertex index, then depth-first with neighbours in
    index order. ``max_cycles`` is not applied here.
    """
    budget = budget or CycleBudget()
    allowed = None
    if budget.vertices is not None:
        allowed = {graph.index(v) for v in budget.vertices if graph.has_vertex(v)}
    limit = None
    if budget.max_length is not None:
        limit = budget.max_length * graph.scale
        # integer bound: lengths are integers, so floor is exact
        limit = limit.numerator // limit.denominator
    lengths = graph.int_lengths
    oracle = graph.oracle
    n = graph.n
    adjacency = [graph.adjacency(i) for i in range(n)]

    for s in range(n):
        if allowed is not None and s not in allowed:
            continue
        back = oracle.row(s) if limit is not None else None
        path = [s]
        arcs: list[int] = []
        on_path = [False] * n
        on_path[s] = True
        cum = 0
        stack = [iter(adjacency[s])]
        while stack:
            cur = path[-1]
            advanced = False
            for w, e in stack[-1]:
                le = lengths[e]
                if w == s:
                    if len(path) >= 3 and path[1] < cur and (limit is None or cum + le <= limit):
                        yield Cycle(graph, path, arcs + [le])
                    continue
                if w < s or on_path[w]:
                    continue
                if allowed is not None and w not in allowed:
                    continue
                nl = cum + le
                if limit is not None and nl + back[w] > limit:
                    continue
                path.append(w)
                arcs.append(le)
                on_path[w] = True
                cum = nl
                stack.append(iter(adjacency[w]))
                advanced = True
                break
            if not advanced:
                stack.pop()
                last = path.pop()
                on_path[last] = False
                if arcs:
                    cum -= arcs.pop()


def enumerate_cycles(graph: MetricGraph, budget: CycleBudget | None = None) -> tuple[list[Cycle], bool]:
    """All simple cycles within the budget, plus a truncation flag.

    ``truncated`` is set exactly when ``max_cycles`` stopped the search
    while further cycles remained.
    """
    budget = budget or CycleBudget()
    out: list[Cycle] = []
    for c in iter_cycles(graph, budget):
        if budget.max_cycles is not None and len(out) >= budget.max_cycles:
            return out, True
        out.append(c)
    return out, False


def cycle_distance(C: Cycle, p, q) -> Fraction:
    """Intrinsic distance ``d_C`` between two points of ``C``.

    Arguments that are :class:`~fractions.Fraction` instances are read as
    arc-length coordinates; anything else is a vertex id on the cycle.
    """
    s = _coordinate(C, p)
    t = _coordinate(C, q)
    diff = abs(s - t)
    return min(diff, C.length - diff)


def _coordinate(C: Cycle, p) -> Fraction:
    if isinstance(p, Fraction):
        if not 0 <= p < C.length:
            raise PointNotOnCycle(f"coordinate {p} outside [0, {C.length})")
        return p
    return C.position(p)


def cycles_from_names(graph: MetricGraph, names: dict[str, Iterable]) -> dict[str, Cycle]:
    return {name: cycle_from_vertices(graph, list(seq)) for name, seq in names.items()}
