"""Deterministic Graphviz DOT rendering of graphs and certificates."""

from __future__ import annotations

from .certify import Certificate
from .config import CAPS
from .errors import InvalidInput, ResourceLimit
from .graphs import Graph, HostGraph, materialize

PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "deeppink", "teal",
           "goldenrod", "navy", "olive", "crimson"]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(obj, cap: int | None = None) -> str:
    """DOT text for a graph, or for a certificate's host with terminals and paths marked."""
    cap = CAPS.dot if cap is None else cap
    if isinstance(obj, Certificate):
        host, cert = obj.host, obj
    elif isinstance(obj, HostGraph):
        host, cert = obj, None
    else:
        raise InvalidInput(f"cannot render {type(obj).__name__}")
    if host.num_vertices() > cap:
        raise ResourceLimit(f"host has {host.num_vertices()} vertices, above the DOT cap {cap}")
    g = host if isinstance(host, Graph) else materialize(host, cap)
    name = {v: f"n{i}" for i, v in enumerate(g.vertices)}

    edge_colour, edge_label = {}, {}
    terminals = {}
    if cert is not None:
        for a, v in enumerate(cert.terminals):
            if v not in name:
                raise InvalidInput(f"terminal {v!r} is not a host vertex")
            terminals[v] = a
        for p, pair in enumerate(sorted(cert.paths)):
            verts = cert.paths[pair]
            for u, v in zip(verts, verts[1:]):
                key = frozenset((u, v))
                edge_colour.setdefault(key, PALETTE[p % len(PALETTE)])
                edge_label.setdefault(key, f"{pair[0]}-{pair[1]}")

    lines = ["graph G {", "  node [shape=circle, fontsize=10];"]
    if cert is not None:
        lines.append(f"  label={_quote(cert.pattern + ' ' + cert.kind)};")
    for v in g.vertices:
        attrs = [f"label={_quote(repr(v))}"]
        if v in terminals:
            attrs += ["shape=doublecircle", "style=filled", "fillcolor=gold", f"xlabel={_quote('T' + str(terminals[v]))}"]
        lines.append(f"  {name[v]} [{', '.join(attrs)}];")
    for u, v in g.edges():
        key = frozenset((u, v))
        if key in edge_colour:
            lines.append(f"  {name[u]} -- {name[v]} [color={edge_colour[key]}, penwidth=2, "
                         f"label={_quote(edge_label[key])}];")
        else:
            lines.append(f"  {name[u]} -- {name[v]} [color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"
