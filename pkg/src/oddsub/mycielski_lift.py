"""Lift a totally odd K_t from G to a totally odd K_{t+1} in the generalized Mycielskian.

mu_m(G) has vertices (v, level) for level in [0, m-1] plus an apex w; edges are
(u,0)(v,0) and (u,i)(v,i+1) for uv in E(G), and (u, m-1) w for every u.

Two cases, depending on whether some base path is a single edge:

* no single-edge path: base paths are copied onto level 0 and every terminal
  climbs to w along a spoke alternating between itself and a private neighbour;
* otherwise, with (hub, partner) the least such pair, the hub's paths are
  staggered across levels 0 and 1 so that a second copy of the hub at level 1
  can serve as the new terminal, and hub and copy are joined through w.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .certify import IMMERSION, SUBDIVISION, Certificate, verify_immersion, verify_subdivision
from .errors import ConstructionBug, InvalidInput
from .graphs import APEX, Lifted, MycielskiOracle, encode_vertex, vertex_key


@dataclass
class LiftInput:
    certificate: Certificate
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise InvalidInput(f"m must be an integer >= 2, got {self.m!r}")
        if self.certificate.pattern_order < 1:
            raise InvalidInput("base certificate has no terminals")

    @property
    def graph(self):
        return self.certificate.host


def _single_edge_pairs(cert: Certificate) -> list[tuple]:
    return sorted(pair for pair, verts in cert.paths.items() if len(verts) == 2)


def _spoke_partners(cert: Certificate, distinct: bool) -> list:
    """A neighbour x_i of every terminal v_i, pairwise distinct when ``distinct``.

    Preferred candidates are the first internal vertices of the terminal's own
    paths, then the rest of its neighbourhood, each group in vertex order.
    """
    host, t = cert.host, cert.pattern_order
    cands = []
    for i in range(t):
        first = [cert.path(i, j)[1] for j in range(t) if j != i]
        rest = sorted((u for u in host.neighbors(cert.terminals[i]) if u not in first), key=vertex_key)
        seen, order = set(), []
        for u in sorted(set(first), key=vertex_key) + rest:
            if u not in seen:
                seen.add(u)
                order.append(u)
        if not order:
            raise InvalidInput(f"terminal {cert.terminals[i]!r} has no neighbour")
        cands.append(order)
    if not distinct:
        return [c[0] for c in cands]
    b = nx.Graph()
    left = [("t", i) for i in range(t)]
    b.add_nodes_from(left, bipartite=0)
    for i, c in enumerate(cands):
        for u in c:
            b.add_edge(("t", i), ("x", u))
    match = nx.bipartite.maximum_matching(b, top_nodes=left)
    if any(("t", i) not in match for i in range(t)):
        raise InvalidInput("no system of distinct spoke neighbours exists")
    return [match[("t", i)][1] for i in range(t)]


def _climb(start_level: int, top: int, on_even, on_odd) -> list:
    return [Lifted(on_even if lvl % 2 == 0 else on_odd, lvl) for lvl in range(start_level, top + 1)]


def _case_a(cert: Certificate, m: int, distinct: bool):
    t = cert.pattern_order
    v = cert.terminals
    base_level = 1 if m % 2 == 0 else 0
    terms = [Lifted(x, base_level) for x in v] + [APEX]
    paths = {}
    for (a, b), verts in cert.paths.items():
        paths[(a, b)] = [terms[a], *(Lifted(x, 0) for x in verts[1:-1]), terms[b]]
    xs = _spoke_partners(cert, distinct) if m >= 3 else [None] * t
    for i in range(t):
        # terminal level holds v_i, the levels above alternate x_i / v_i, ending on v_i at m-1
        if base_level == 1:
            spoke = _climb(1, m - 1, xs[i], v[i])
        else:
            spoke = _climb(0, m - 1, v[i], xs[i])
        paths[(i, t)] = spoke + [APEX]
    return terms, paths, {"case": "A", "spokes": [encode_vertex(x) if x is not None else None for x in xs]}


def _case_b(cert: Certificate, m: int):
    t = cert.pattern_order
    v = cert.terminals
    h, p = _single_edge_pairs(cert)[0]
    terms = [Lifted(x, 0) for x in v] + [Lifted(v[h], 1)]
    paths = {}
    for (a, b), verts in cert.paths.items():
        if h not in (a, b):
            paths[(a, b)] = [Lifted(x, 0) for x in verts]
    for k in range(t):
        if k == h:
            continue
        base = cert.path(h, k)
        inner = base[1:-1]
        # to the hub: b_x on level x mod 2; to the hub copy: b_x on level (x+1) mod 2
        to_hub = [Lifted(v[h], 0)] + [Lifted(bx, x % 2) for x, bx in enumerate(inner, 1)] + [Lifted(v[k], 0)]
        to_copy = [Lifted(v[h], 1)] + [Lifted(bx, (x + 1) % 2) for x, bx in enumerate(inner, 1)] + [Lifted(v[k], 0)]
        paths[(min(h, k), max(h, k))] = to_hub if h < k else to_hub[::-1]
        paths[(k, t)] = to_copy[::-1]
    up = _climb(0, m - 1, v[h], v[p])
    down = [Lifted(v[h] if lvl % 2 else v[p], lvl) for lvl in range(m - 1, 0, -1)]
    paths[(h, t)] = up + [APEX] + down
    return terms, paths, {"case": "B", "hub": h, "partner": p}


def _lift(cert: Certificate, m: int, kind: str) -> Certificate:
    LiftInput(cert, m)
    check = verify_subdivision if kind == SUBDIVISION else verify_immersion
    rep = check(cert.as_kind(kind), require_odd=True)
    if not rep.passed:
        raise InvalidInput(f"base certificate fails {kind} verification: {sorted(rep.rules())}")
    host = MycielskiOracle(cert.host, m)
    if _single_edge_pairs(cert):
        terms, paths, info = _case_b(cert, m)
    else:
        terms, paths, info = _case_a(cert, m, distinct=kind == SUBDIVISION)
    for pair, verts in paths.items():
        for a, b in zip(verts, verts[1:]):
            if not host.adjacent(a, b):
                raise ConstructionBug(f"lifted path {pair}: {a!r} and {b!r} are not adjacent")
    meta = {"construction": "mycielski-lift", "m": m, "base_pattern": cert.pattern, **info}
    return Certificate(host, terms, paths, kind, meta)


def lift_immersion(cert: Certificate | LiftInput, m: int | None = None) -> Certificate:
    """Totally odd K_{t+1} immersion in mu_m(G) from a totally odd K_t immersion in G."""
    if isinstance(cert, LiftInput):
        cert, m = cert.certificate, cert.m
    return _lift(cert, m, IMMERSION)


def lift_subdivision(cert: Certificate | LiftInput, m: int | None = None) -> Certificate:
    """Totally odd K_{t+1} subdivision in mu_m(G) from a totally odd K_t subdivision in G."""
    if isinstance(cert, LiftInput):
        cert, m = cert.certificate, cert.m
    return _lift(cert, m, SUBDIVISION)
