"""Exact-arithmetic chordality and hyperbolicity tools for finite metric graphs."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    DisconnectedGraph,
    DuplicateEdge,
    EdgePoint,
    GraphError,
    GraphPath,
    InvalidPoint,
    MetricGraph,
    NonPositiveLength,
    VertexPoint,
    all_pairs_distances,
    build_graph,
    distance_points,
    geodesics_between,
    parse_graph,
    read_graph,
    write_graph,
)
from .cycles import (  # noqa: E402
    Cycle,
    CycleBudget,
    EdgeMissing,
    NotACycle,
    PointNotOnCycle,
    cycle_distance,
    cycle_from_vertices,
    enumerate_cycles,
)
from .hyperbolicity import (  # noqa: E402
    GeodesicTriangle,
    four_point_delta,
    geodesic_triangle,
    rips_delta,
    thinness,
)
from .shortcuts import (  # noqa: E402
    ShortcutCertificate,
    VertexNotOnCycle,
    density_check,
    shortcut_vertices,
    strict_shortcut,
    triangle_shortcut_positions,
)
from .chordality import (  # noqa: E402
    Outcome,
    Verdict,
    VerifyBudget,
    check_densely_path_chordal,
    check_edge_chordal,
    check_path_chordal,
    check_triangle_chordal,
    verify_theorems,
)
