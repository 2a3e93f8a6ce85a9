"""The hyperbolic approximation of the line and its long cycle C_n.

Run with ``python3 demos/hyperapprox_line.py``.
"""
from __future__ import annotations

from hyperchord.cycles import cycle_from_vertices
from hyperchord.families import gen_hyperapprox_line
from hyperchord.graph import is_geodesic
from hyperchord.shortcuts import shortcut_vertices


def main(n: int = 3) -> None:
    fam = gen_hyperapprox_line(n)
    g = fam.graph
    print(f"approximation with n={n}: {g.n} vertices, {g.m} edges")
    gamma = fam.paths["gamma"]
    top = 6 ** n
    print(f"d(v_0, v_{top}) = {g.oracle.distance((0, 0), (0, top))}, gamma geodesic: {is_geodesic(g, gamma)}")

    C = cycle_from_vertices(g, fam.cycles[f"C_{n}"])
    print(f"C_{n} has length {C.length}")
    # every vertex above level 0 has a strict shortcut exactly as long as its height
    certs = shortcut_vertices(g, C)
    for w in sorted((v for v in C.vertices if v[0] < 0), key=lambda v: (v[0], v[1])):
        print(f"  {w}: shortest strict shortcut {certs[w].length}, lands on {certs[w].q}")


if __name__ == "__main__":
    main()
