"""Geodesic squares in the quadrant need long shortcuts.

Run with ``python3 demos/quadrant_squares.py``.
"""
from __future__ import annotations

from hyperchord.chordality import check_path_chordal
from hyperchord.cycles import cycle_from_vertices
from hyperchord.families import gen_quadrant
from hyperchord.shortcuts import shortcut_vertices


def main(N: int = 10) -> None:
    fam = gen_quadrant(N)
    g = fam.graph
    print(f"quadrant truncated at N={N}: {g.n} vertices")
    for n in range(2, N):
        C = cycle_from_vertices(g, fam.cycles[f"C_{n}"])
        certs = shortcut_vertices(g, C)
        shortest = min((c.length for c in certs.values()), default=None)
        print(f"  C_{n}: length {C.length}, shortest strict shortcut {shortest}")

    C8 = cycle_from_vertices(g, fam.cycles["C_8"])
    v = check_path_chordal(g, 8, 4, cycles=[C8])
    print(f"(8,4)-path-chordal on C_8: {v.outcome.value}, min shortcut {v.witness.min_shortcut}")


if __name__ == "__main__":
    main()
