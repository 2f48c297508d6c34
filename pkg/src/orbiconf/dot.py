"""Graphviz DOT output for Levi and Menger graphs.

Points are filled black and lines white.  On annotated Levi graphs a weight
other than 1 is written next to its node, a line of multiplicity d appears
as d separate nodes, and an incidence with c > 1 is drawn as c parallel
edges.
"""

from __future__ import annotations

from .incidence import Configuration, IncidenceStructure, LeviGraph, levi, menger_edges
from .orbi import OrbiIncidenceStructure, orbi_levi

_POINT = 'shape=circle, style=filled, fillcolor=black, fontcolor=white, width=0.25'
_LINE = 'shape=circle, style=filled, fillcolor=white, width=0.25'


def _label(name: str, weight: int) -> str:
    return f'xlabel="{weight}", label=""' if weight != 1 else 'label=""'


def levi_dot(graph: LeviGraph, name: str = "levi") -> str:
    out = [f"graph {name} {{", "  node [fixedsize=true];"]
    for p, a in enumerate(graph.point_weights, start=1):
        out.append(f'  p{p} [{_POINT}, {_label(str(p), a)}, tooltip="p{p}"];')
    for j, (b, copies) in enumerate(zip(graph.line_weights, graph.line_copies), start=1):
        for k in range(1, copies + 1):
            out.append(f'  l{j}_{k} [{_LINE}, {_label(str(j), b)}, tooltip="l{j}"];')
    for p, j, c in graph.edges:
        for k in range(1, graph.line_copies[j - 1] + 1):
            out += [f"  p{p} -- l{j}_{k};"] * c
    out.append("}")
    return "\n".join(out) + "\n"


def to_levi_dot(obj, name: str = "levi") -> str:
    """Levi DOT for a configuration, incidence structure or orbi-incidence structure."""
    graph = orbi_levi(obj) if isinstance(obj, OrbiIncidenceStructure) else levi(obj)
    return levi_dot(graph, name)


def menger_dot(obj, name: str = "menger") -> str:
    """Collinearity graph of the points; display only, it does not determine the structure."""
    if isinstance(obj, OrbiIncidenceStructure):
        weights = obj.weights
        edges = {}
        for line in obj.lines:
            pts = sorted(line.support)
            for i, p in enumerate(pts):
                for q in pts[i + 1:]:
                    edges[p, q] = edges.get((p, q), 0) + line.d
    else:
        structure = obj.structure if isinstance(obj, Configuration) else obj
        weights = (1,) * structure.point_count
        edges = dict(menger_edges(structure))
    out = [f"graph {name} {{", "  node [fixedsize=true];"]
    for p, a in enumerate(weights, start=1):
        out.append(f'  p{p} [{_POINT}, {_label(str(p), a)}, tooltip="p{p}"];')
    for (p, q), k in sorted(edges.items()):
        out += [f"  p{p} -- p{q};"] * k
    out.append("}")
    return "\n".join(out) + "\n"
