"""Hyperbolic but not edge-chordal: the strip Z x P3.

Run with ``python3 demos/zxp3_tour.py``.
"""
from __future__ import annotations

from hyperchord.chordality import check_densely_path_chordal, check_edge_chordal
from hyperchord.cycles import CycleBudget
from hyperchord.families import gen_zxp3
from hyperchord.hyperbolicity import rips_delta


def main(N: int = 6) -> None:
    g = gen_zxp3(N).graph
    print(f"Z x P3 truncated at N={N}: {g.n} vertices, {g.m} edges")

    r = rips_delta(g)
    print(f"thin-triangle estimate {r.delta_low} (margin {r.margin})")

    scope = CycleBudget(max_length=20)
    dense = check_densely_path_chordal(g, 3, 5, 2, scope)
    print(f"3-densely (5,2)-path-chordal: {dense.outcome.value} over {dense.qualifying} cycles")

    # long rectangles through rows 1 and 3 have no chord at all
    edge = check_edge_chordal(g, 8, 3, scope)
    C = edge.witness.cycle
    print(f"(8,3)-edge-chordal: {edge.outcome.value}, witness of length {C.length}")
    print("  witness:", " ".join(f"{v}" for v in C.vertices))


if __name__ == "__main__":
    main()
