"""JSON report construction. Rationals are always ``"num/den"`` strings."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from importlib import resources

from . import __version__
from .chordality import CycleEvidence, EdgeShortcut, TriangleEvidence, Verdict, VerifyReport
from .cycles import Cycle
from .graph import EdgePoint, MetricGraph, VertexPoint, format_graph, vertex_token
from .hyperbolicity import FourPointResult, GeodesicTriangle, RipsEstimate
from .shortcuts import DensityReport, ShortcutCertificate

SCHEMA_VERSION = "1.0"


def load_schema() -> dict:
    text = resources.files("hyperchord").joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def frac(x) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def graph_digest(graph: MetricGraph) -> dict:
    text = format_graph(graph)
    return {
        "vertices": graph.n,
        "edges": graph.m,
        "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
    }


def point_json(graph: MetricGraph, p) -> dict:
    if isinstance(p, VertexPoint):
        return {"vertex": vertex_token(p.vertex)}
    assert isinstance(p, EdgePoint)
    lo, hi = graph.edge_ends(p.edge)
    verts = graph.vertices
    return {"edge": [vertex_token(verts[lo]), vertex_token(verts[hi])], "offset": frac(p.offset)}


def tokens(seq) -> list[str]:
    return [vertex_token(v) for v in seq]


def cycle_json(C: Cycle) -> dict:
    return {"vertices": tokens(C.vertices), "length": frac(C.length)}


def certificate_json(c) -> dict:
    if isinstance(c, EdgeShortcut):
        return {"p": vertex_token(c.u), "q": vertex_token(c.v), "path": tokens([c.u, c.v]),
                "length": frac(c.length), "strict": True}
    assert isinstance(c, ShortcutCertificate)
    return {"p": vertex_token(c.p), "q": vertex_token(c.q), "path": tokens(c.path.vertices),
            "length": frac(c.length), "strict": c.strict}


def density_json(d: DensityReport | None) -> dict | None:
    if d is None:
        return None
    return {
        "positions": [frac(x) for x in d.positions],
        "max_gap": frac(d.max_gap),
        "dense": d.dense,
        "eps": frac(d.eps),
        "circumference": frac(d.circumference),
    }


def triangle_json(T: GeodesicTriangle) -> dict:
    return {
        "corners": tokens(T.corners),
        "sides": [tokens(s.vertices) for s in T.sides],
        "length": frac(T.length),
    }


def evidence_json(ev) -> dict:
    if isinstance(ev, TriangleEvidence):
        return {
            "triangle": triangle_json(ev.triangle),
            "ok": ev.ok,
            "positions": [frac(x) for x in ev.positions],
            "max_gap": frac(ev.max_gap),
        }
    assert isinstance(ev, CycleEvidence)
    return {
        "cycle": cycle_json(ev.cycle),
        "ok": ev.ok,
        "shortcuts": [certificate_json(c) for c in ev.shortcuts],
        "density": density_json(ev.density),
        "min_shortcut": frac(ev.min_shortcut),
    }


def _jsonable(v):
    if isinstance(v, Fraction):
        return frac(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def verdict_json(v: Verdict, full: bool = True) -> dict:
    out = {
        "kind": "verdict",
        "property": v.property,
        "outcome": v.outcome.value,
        "params": {"k": frac(v.params.k), "m": frac(v.params.m), "eps": frac(v.params.eps)},
        "examined": v.examined,
        "qualifying": v.qualifying,
        "truncated": v.truncated,
        "budget": _jsonable(v.budget),
        "notes": list(v.notes),
        "witness": evidence_json(v.witness) if v.witness is not None else None,
    }
    if full:
        out["certificates"] = [evidence_json(e) for e in v.certificates]
    return out


def rips_json(graph: MetricGraph, r: RipsEstimate, triple_cap=None) -> dict:
    w = None
    if r.witness is not None:
        T = r.witness.triangle
        w = {
            "corners": [point_json(graph, p) for p in r.witness.corners],
            "point": point_json(graph, r.witness.point),
            "sides": [tokens(s.vertices) for s in T.sides],
            "value": frac(r.witness.value),
        }
    return {
        "kind": "rips",
        "delta_low": frac(r.delta_low),
        "margin": frac(r.margin),
        "upper": frac(r.upper),
        "resolution": frac(r.h),
        "geodesic_cap": r.geodesic_cap,
        "triple_cap": triple_cap,
        "corner_mode": r.corner_mode,
        "corners_examined": r.corners_examined,
        "corners_total": r.corners_total,
        "triangles_examined": r.triangles_examined,
        "truncated": r.truncated,
        "geodesics_truncated": r.geodesics_truncated,
        "witness": w,
    }


def fourpoint_json(graph: MetricGraph, r: FourPointResult) -> dict:
    return {
        "kind": "fourpoint",
        "value": frac(r.value),
        "witness": tokens(r.witness) if r.witness else None,
        "sums": [frac(s) for s in r.sums] if r.sums else None,
    }


def verify_json(graph: MetricGraph, rep: VerifyReport) -> dict:
    items = []
    for res in rep.results:
        premise = res.premise
        if isinstance(premise, Verdict):
            premise = verdict_json(premise, full=False)
        elif isinstance(premise, RipsEstimate):
            premise = rips_json(graph, premise)
        items.append({
            "name": res.name,
            "status": res.status,
            "statement": res.statement,
            "constants": _jsonable(res.constants),
            "detail": res.detail,
            "premise": premise,
            "conclusion": verdict_json(res.conclusion, full=False) if res.conclusion else None,
        })
    return {
        "kind": "verify",
        "status": rep.status,
        "delta_low": frac(rep.rips.delta_low) if rep.rips else None,
        "delta_plus": frac(rep.delta_plus),
        "implications": items,
    }


def envelope(command: list[str], graph: MetricGraph | None, result: dict, budgets: dict,
             wall_ms: int | None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "hyperchord",
        "version": __version__,
        "command": list(command),
        "graph": graph_digest(graph) if graph is not None else None,
        "budgets": _jsonable(budgets),
        "result": result,
        "wall_time_ms": wall_ms,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
