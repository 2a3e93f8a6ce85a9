"""Finite truncations of the graph families, with their distinguished cycles and paths.

Every generator returns a :class:`Family`: the graph plus named vertex
sequences (closed for cycles, open for paths) that the tests and the
``check --cycle-file`` sidecar refer to. Output is deterministic.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import MetricGraph, vertex_token, write_graph


class WindowTooSmall(ValueError):
    pass


@dataclass
class Family:
    name: str
    params: dict
    graph: MetricGraph
    cycles: dict = field(default_factory=dict)
    paths: dict = field(default_factory=dict)

    def sidecar(self) -> dict:
        return {
            "cycles": {k: [vertex_token(v) for v in seq] for k, seq in self.cycles.items()},
            "paths": {k: [vertex_token(v) for v in seq] for k, seq in self.paths.items()},
        }

    def write(self, path) -> None:
        """Write the graph file and its ``<path>.json`` sidecar."""
        write_graph(self.graph, path)
        with open(f"{path}.json", "w", encoding="utf-8") as fh:
            json.dump(self.sidecar(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def rectangle_cycle(p0: int, q0: int, p1: int, q1: int, wrap=lambda p, q: (p, q)) -> list:
    """Perimeter of the grid rectangle ``[p0, p1] x [q0, q1]`` as a vertex list."""
    seq = [wrap(p, q0) for p in range(p0, p1)]
    seq += [wrap(p1, q) for q in range(q0, q1)]
    seq += [wrap(p, q1) for p in range(p1, p0, -1)]
    seq += [wrap(p0, q) for q in range(q1, q0, -1)]
    return seq


# -- Z x P3 -------------------------------------------------------------------------


def gen_zxp3(N: int) -> Family:
    """Product of the integer path ``[-N, N]`` with a 3-vertex path, unit lengths.

    Vertices are ``(i, j)`` with ``j`` in 1..3. Named cycles ``outer`` (the
    full boundary) and ``rows13_w`` (the width-``w`` rectangle through rows
    1 and 3 starting at ``i = 0``, which has no single-edge shortcut).
    """
    _need(N >= 1, "N must be >= 1")
    verts = [(i, j) for i in range(-N, N + 1) for j in (1, 2, 3)]
    edges = []
    for i in range(-N, N + 1):
        for j in (1, 2, 3):
            if i < N:
                edges.append(((i, j), (i + 1, j), 1))
            if j < 3:
                edges.append(((i, j), (i, j + 1), 1))
    g = MetricGraph(edges, verts)
    cycles = {"outer": rectangle_cycle(-N, 1, N, 3)}
    for w in range(1, N + 1):
        cycles[f"rows13_{w}"] = rectangle_cycle(0, 1, w, 3)
    return Family("zxp3", {"n": N}, g, cycles)


# -- quadrant ----------------------------------------------------------------------


def gen_quadrant(N: int, squares=None) -> Family:
    """The grid ``[0, N]^2`` with unit lengths and geodesic squares ``C_n``.

    ``C_n`` has corners ``(1,1), (n,1), (n,n), (1,n)`` and length ``4n - 4``.
    """
    _need(N >= 2, "N must be >= 2")
    verts = [(p, q) for p in range(N + 1) for q in range(N + 1)]
    edges = []
    for p in range(N + 1):
        for q in range(N + 1):
            if p < N:
                edges.append(((p, q), (p + 1, q), 1))
            if q < N:
                edges.append(((p, q), (p, q + 1), 1))
    g = MetricGraph(edges, verts)
    squares = range(2, N + 1) if squares is None else squares
    cycles = {}
    for n in squares:
        _need(2 <= n <= N, f"square size {n} outside 2..{N}")
        cycles[f"C_{n}"] = rectangle_cycle(1, 1, n, n)
    return Family("quadrant", {"n": N}, g, cycles)


# -- sparse-rung blocks ----------------------------------------------------------------


def _rung(p: int, q: int, n: int, period: int) -> bool:
    """Whether the horizontal edge ``(p-1, q)(p, q)`` exists in the block."""
    if q == 0 or q == n:
        return True
    half = period // 2
    return q % period == (0 if p % 2 else half)


def partial_sum(k: int) -> Fraction:
    """``sum_{i=0}^{k} 2^{-i} = 2 - 2^{-k}``."""
    return 2 - Fraction(1, 2**k)


def _block_edges(n: int, period: int, weighted: bool, tag=None):
    def v(p, q):
        return (p, q) if tag is None else (tag, p, q)

    def length(p, q):
        return partial_sum(p + q) if weighted else 1

    verts = [v(p, q) for p in range(n + 1) for q in range(n + 1)]
    edges = []
    for p in range(n + 1):
        for q in range(n + 1):
            if q < n:
                edges.append((v(p, q), v(p, q + 1), length(p, q)))
            if p < n and _rung(p + 1, q, n, period):
                edges.append((v(p, q), v(p + 1, q), length(p, q)))
    return verts, edges


def _gen_blocks(name: str, n: int, chain_length: int, period: int, weighted: bool, min_n: int) -> Family:
    _need(n >= min_n, f"n must be >= {min_n}")
    _need(chain_length >= 1, "chain length must be >= 1")
    if chain_length == 1:
        verts, edges = _block_edges(n, period, weighted)
        g = MetricGraph(edges, verts)
        cycles = {"perimeter": rectangle_cycle(0, 0, n, n)}
        return Family(name, {"n": n, "chain_length": 1}, g, cycles)
    first = n - chain_length + 1
    _need(first >= min_n, f"chain would include blocks smaller than {min_n}")
    verts, edges = [], []
    for j in range(first, n + 1):
        bv, be = _block_edges(j, period, weighted, tag=j)
        verts += bv
        edges += be
        if j > first:
            # the attaching path: consecutive block roots joined by unit edges
            edges.append(((j - 1, 0, 0), (j, 0, 0), 1))
    g = MetricGraph(edges, verts)
    cycles = {
        f"perimeter_{j}": rectangle_cycle(0, 0, j, j, wrap=lambda p, q, j=j: (j, p, q))
        for j in range(first, n + 1)
    }
    return Family(name, {"n": n, "chain_length": chain_length}, g, cycles)


def gen_mod4(n: int, chain_length: int = 1) -> Family:
    """Grid block with every vertical edge, full top and bottom rows, and
    interior rungs ``(p-1, q)(p, q)`` only when ``q = 0 mod 4`` (p odd) or
    ``q = 2 mod 4`` (p even). Unit lengths.

    ``chain_length = 1`` gives the single block with ids ``(p, q)``; larger
    values chain the blocks of sizes ``n - c + 1 .. n`` (ids ``(j, p, q)``)
    by unit edges between their ``(0, 0)`` corners.
    """
    return _gen_blocks("mod4", n, chain_length, 4, False, 4)


def gen_mod8(n: int, chain_length: int = 1) -> Family:
    """Like :func:`gen_mod4` with rungs at ``q = 0 mod 8`` (p odd) or
    ``q = 4 mod 8`` (p even), and lengths ``2 - 2^-(p+q)`` on the edges
    leaving ``(p, q)`` upward and rightward."""
    return _gen_blocks("mod8", n, chain_length, 8, True, 2)


# -- hyperbolic approximation of the line ------------------------------------------------


def level_center(v) -> int:
    level, m = v
    return m * 6 ** (-level)


def gen_hyperapprox_line(n: int, extra_levels: int = 1, margin: int | None = None) -> Family:
    """Level graph over the nets ``6^s Z`` (levels ``0, -1, ..., -(n-1)-extra``).

    Vertex ``(l, m)`` sits at level ``l`` with centre ``m * 6^-l`` and ball
    radius ``2 * 6^-l``; only centres in ``[-margin, 6^n + margin]`` are
    kept (default margin ``4 * 6^n``; a negative margin shrinks the window
    and raises :class:`WindowTooSmall` once a named vertex falls outside).
    Horizontal edges join same-level
    vertices whose closed balls meet; radial edges join consecutive levels
    when the finer ball lies inside the coarser one. Unit lengths.

    Named: cycle ``C_n`` and path ``gamma`` (``v_0`` up the left radial
    chain, across the top horizontal edge, down to ``v_{6^n}``).
    """
    _need(n >= 2, "n must be >= 2")
    _need(extra_levels >= 0, "extra levels must be >= 0")
    top = 6**n
    if margin is None:
        margin = 4 * top
    lo, hi = -margin, top + margin
    if lo > hi:
        raise WindowTooSmall(f"margin {margin} leaves an empty window")
    levels = list(range(0, -(n - 1) - extra_levels - 1, -1))
    verts = []
    by_level = {}
    for lvl in levels:
        s = 6 ** (-lvl)
        ms = list(range(-(-lo // s), hi // s + 1))
        by_level[lvl] = ms
        verts += [(lvl, m) for m in ms]
    present = set(verts)
    edges = []
    for lvl in levels:
        s = 6 ** (-lvl)
        ms = by_level[lvl]
        for m in ms:
            for d in range(1, 5):  # |c - c'| <= 4 s
                if (lvl, m + d) in present:
                    edges.append(((lvl, m), (lvl, m + d), 1))
        if lvl - 1 in by_level:
            # finer ball B(m s, 2 s) inside coarser B(m' 6 s, 12 s): |m s - 6 m' s| <= 10 s
            for m in ms:
                for mp in range((m - 10 + 5) // 6 - 1, (m + 10) // 6 + 2):
                    if abs(m - 6 * mp) <= 10 and (lvl - 1, mp) in present:
                        edges.append(((lvl, m), (lvl - 1, mp), 1))
    g = MetricGraph(edges, verts)

    left = [(-k, 1) for k in range(1, n)]
    right = [(-k, 6 ** (n - k) - 1) for k in range(1, n)]
    gamma = [(0, 0)] + left + right[::-1] + [(0, top)]
    bottom = [(0, i) for i in range(top - 1, 0, -1)]
    cycle = gamma + bottom
    missing = [v for v in cycle if v not in present]
    if missing:
        raise WindowTooSmall(f"named vertices outside the window: {missing[:3]}")
    return Family("hyperapprox", {"n": n, "extra_levels": extra_levels, "margin": margin}, g,
                  {f"C_{n}": cycle}, {"gamma": gamma})


# -- small reference graphs -------------------------------------------------------------


def gen_cycle(n: int) -> Family:
    _need(n >= 3, "a cycle needs n >= 3")
    g = MetricGraph([(i, (i + 1) % n, 1) for i in range(n)], list(range(n)))
    return Family("cycle", {"n": n}, g, {f"C{n}": list(range(n))})


def gen_path(n: int) -> Family:
    _need(n >= 2, "a path needs n >= 2")
    return Family("path", {"n": n}, MetricGraph([(i, i + 1, 1) for i in range(n - 1)]))


def gen_grid(a: int, b: int) -> Family:
    """``a x b`` vertices, unit lengths."""
    _need(a >= 1 and b >= 1 and a * b >= 2, "grid needs at least two vertices")
    verts = [(p, q) for p in range(a) for q in range(b)]
    edges = [((p, q), (p + 1, q), 1) for p in range(a - 1) for q in range(b)]
    edges += [((p, q), (p, q + 1), 1) for p in range(a) for q in range(b - 1)]
    return Family("grid", {"a": a, "b": b}, MetricGraph(edges, verts))


def gen_complete(n: int) -> Family:
    _need(n >= 2, "complete graph needs n >= 2")
    edges = [(i, j, 1) for i in range(n) for j in range(i + 1, n)]
    return Family("complete", {"n": n}, MetricGraph(edges, list(range(n))))


def gen_tree(n: int, seed: int = 0) -> Family:
    """Random recursive tree: vertex ``i`` hangs off a uniform earlier vertex."""
    _need(n >= 2, "tree needs n >= 2")
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i, 1) for i in range(1, n)]
    return Family("tree", {"n": n, "seed": seed}, MetricGraph(edges, list(range(n))))


def gen_star(legs: int = 3, leg_length: int = 1) -> Family:
    """Star with ``legs`` paths of ``leg_length`` unit edges from centre ``c``."""
    _need(legs >= 1 and leg_length >= 1, "star needs positive sizes")
    edges = []
    for i in range(legs):
        prev = "c"
        for t in range(1, leg_length + 1):
            cur = f"l{i}_{t}"
            edges.append((prev, cur, 1))
            prev = cur
    return Family("star", {"legs": legs, "leg_length": leg_length}, MetricGraph(edges))


def gen_basic(kind: str, *args, **kwargs) -> Family:
    table = {
        "cycle": gen_cycle,
        "path": gen_path,
        "grid": gen_grid,
        "complete": gen_complete,
        "tree": gen_tree,
        "star": gen_star,
    }
    if kind not in table:
        raise ValueError(f"unknown basic family {kind!r}")
    return table[kind](*args, **kwargs)


def attach_chain(base: Family, length: int, at) -> Family:
    """Hang a unit path of ``length`` edges off vertex ``at`` of ``base``."""
    _need(length >= 1, "chain length must be >= 1")
    g = base.graph
    edges = [(u, v, w) for u, v, w in g.edge_list()]
    prev = at
    for t in range(1, length + 1):
        cur = ("tail", t)
        edges.append((prev, cur, 1))
        prev = cur
    new = MetricGraph(edges, list(g.vertices) + [("tail", t) for t in range(1, length + 1)])
    params = dict(base.params, chain=length)
    return Family(f"{base.name}+chain", params, new, dict(base.cycles), dict(base.paths))
