"""JSON and DOT renderings of a built complex. Output order is canonical."""

from __future__ import annotations

import json
from itertools import combinations

from isc.analysis import facet_graph, pseudomanifold
from isc.complex import Complex, vertices


def complex_to_dict(c: Complex) -> dict:
    simplices = []
    for key, s in c.items():
        verts = [] if s.is_empty else sorted(v.encode() for v in vertices(s))
        simplices.append({"key": key, "dim": s.dim, "vertices": verts})
    return {"counter": c.counter.to_json(), "simplices": simplices}


def complex_to_json(c: Complex) -> str:
    return json.dumps(complex_to_dict(c), indent=1, sort_keys=True) + "\n"


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def facet_graph_dot(c: Complex) -> str:
    """Facets as nodes, shared ridges as edges; boundary ridges hang off dashed."""
    graph = facet_graph(c)
    report = pseudomanifold(c, graph)
    lines = [f"graph {_q('P' + str(c.counter))} {{", "  node [shape=box];"]
    for f in graph.facets:
        lines.append(f"  {_q(f)};")
    for ridge, fs in graph.ridges.items():
        if len(fs) == 1:
            node = _q("ridge " + ridge)
            lines.append(f"  {node} [shape=point];")
            lines.append(f"  {_q(fs[0])} -- {node} [style=dashed, label={_q(ridge)}];")
            continue
        for a, b in combinations(fs, 2):
            lines.append(f"  {_q(a)} -- {_q(b)} [label={_q(ridge)}];")
    lines.append(f"  // pseudomanifold: {str(report.is_pseudomanifold).lower()}")
    lines.append("}")
    return "\n".join(lines) + "\n"
