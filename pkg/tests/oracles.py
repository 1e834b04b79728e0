"""Slow, definition-level reference implementations used only by the tests."""

import random
from itertools import combinations, product

import networkx as nx

from oddsub.certify import SUBDIVISION, Certificate
from oddsub.graphs import Graph, complete_graph, cycle_graph
from oddsub.mycielski_lift import lift_subdivision
from oddsub.subdivision_kneser import Theorem8Params, build_theorem2, build_theorem8
from oddsub.zigzag import (
    ProperColouring,
    is_potential_zigzag,
    is_zigzag,
    kempe_chain,
    max_zigzags,
    potential_zigzags,
    build_theorem3,
    zig_report,
)


def zigzag_by_definition(g: Graph, col: dict, seq) -> bool:
    if any(col[a] >= col[b] for a, b in zip(seq, seq[1:])):
        return False
    odd, even = seq[0::2], seq[1::2]
    return all(g.adjacent(x, y) for x in odd for y in even)


def all_zigzags(g: Graph, col: dict, size: int) -> list:
    out = []
    for sub in combinations(g.vertices, size):
        seq = sorted(sub, key=lambda v: col[v])
        if zigzag_by_definition(g, col, seq):
            out.append(tuple(seq))
    return out


def max_zigzag_size(g: Graph, col: dict) -> int:
    for size in range(len(g), 0, -1):
        if all_zigzags(g, col, size):
            return size
    return 0


def proper_colourings(g: Graph, colours: int):
    verts = g.vertices
    for vals in product(range(1, colours + 1), repeat=len(verts)):
        col = dict(zip(verts, vals))
        if all(col[u] != col[v] for u, v in g.edges()):
            yield col


def has_colouring_without_zigzag(g: Graph, size: int) -> bool:
    """Is there a proper colouring (values in [1, |V|], WLOG) with no zigzag of ``size`` vertices?

    Backtracking over vertex colours; a partial colouring is abandoned as soon as
    its coloured vertices already contain such a zigzag.
    """
    order = list(nx.dfs_preorder_nodes(_nx(g)))
    n = len(order)
    col = {}

    def bad(v) -> bool:
        others = [u for u in col if u != v]
        for sub in combinations(others, size - 1):
            seq = sorted((*sub, v), key=lambda x: col[x])
            if zigzag_by_definition(g, col, seq):
                return True
        return False

    def rec(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        for x in range(1, n + 1):
            if any(col.get(u) == x for u in g.neighbors(v)):
                continue
            col[v] = x
            if not bad(v) and rec(pos + 1):
                return True
            del col[v]
        return False

    return rec(0)


def brute_zig(g: Graph) -> int:
    if len(g) == 0:
        return 0
    s = 1
    while has_colouring_without_zigzag(g, s + 1) is False:
        s += 1
    return s


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def kempe_components(g: Graph, col: dict, i: int, j: int) -> list[set]:
    """Components of the subgraph induced by colours i and j, by union-find."""
    parent = {v: v for v in g.vertices if col[v] in (i, j)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        if u in parent and v in parent:
            parent[find(u)] = find(v)
    groups = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())


def audit_colour_pairs(cert) -> list:
    """Colour pairs used along each path of a build_theorem3 certificate, checked from its metadata."""
    meta = cert.meta
    col = dict(zip(cert.host.vertices, meta["colouring"]))
    term = meta["terminal_colours"]
    labels = {tuple(int(x) for x in key.split(",")): val for key, val in meta["labels"].items()}
    bad = []
    for (a, b), path in cert.paths.items():
        i, j = term[a], term[b]
        if i % 2 and j % 2:
            li, lj = labels[(i, j)]
            ok = {frozenset((i, j)), frozenset((i, li)), frozenset((j, lj))}
        else:
            ok = {frozenset((i, j))}
        for u, v in zip(path, path[1:]):
            if frozenset((col[u], col[v])) not in ok:
                bad.append(((i, j), u, v))
    return bad


def random_zig_chi_graph(rng: random.Random, lo=4, hi=9):
    """A random graph with zig = chi >= 3, plus chi."""
    while True:
        n = rng.randint(lo, hi)
        p = rng.uniform(0.3, 0.85)
        g = Graph(range(n), [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])
        rep = zig_report(g)
        if rep.chi >= 3 and rep.zig == rep.chi:
            return g, rep.chi


def random_t_colouring(rng: random.Random, g: Graph, t: int) -> ProperColouring:
    """A random proper t-colouring: the optimum with colours permuted, then random Kempe switches."""
    base = zig_report(g).chi_colouring
    perm = list(range(1, t + 1))
    rng.shuffle(perm)
    c = ProperColouring({v: perm[base[v] - 1] for v in g.vertices}, t)
    for _ in range(rng.randint(0, 4)):
        i, j = rng.sample(range(1, t + 1), 2)
        x = rng.choice(g.vertices)
        if c[x] in (i, j):
            c = c.switched(kempe_chain(g, c, i, j, x).vertices, i, j)
    return c


def switching_instance(rng: random.Random):
    """Draw (G, c, Z, C) and check what a Kempe switch does to maximum zigzags; None if the draw has no usable Z."""
    g, t = random_zig_chi_graph(rng)
    c = random_t_colouring(rng, g, t)
    i, j = sorted(rng.sample(range(1, t + 1), 2))
    found = potential_zigzags(g, c, i, j)
    rng.shuffle(found)
    for pz in found:
        u, v = pz.twins
        cu = kempe_chain(g, c, i, j, u)
        if v in cu:
            continue
        cv = kempe_chain(g, c, i, j, v)
        region = set(cu.vertices)
        for comp in kempe_components(g, c.assignment, i, j):
            if not comp & set(cv.vertices) and rng.random() < 0.5:
                region |= comp
        c2 = c.switched(region, i, j)
        first = is_zigzag(g, c2, sorted(pz.vertices, key=lambda z: c2[z]))
        classified = []
        for z2 in max_zigzags(g, c2):
            inside = sum(1 for z in z2 if z in region)
            alt1 = inside == 1 and is_potential_zigzag(g, c, list(z2), i, j) is not None
            alt2 = is_zigzag(g, c, sorted(z2, key=lambda z: (c[z], z)))
            classified.append((len(z2) == t, alt1, alt2))
        return {"t": t, "first": first, "classified": classified}
    return None


def identity_cert(t, kind=SUBDIVISION):
    g = complete_graph(t)
    v = g.vertices
    return Certificate(g, list(v), {(a, b): [v[a], v[b]] for a, b in combinations(range(t), 2)}, kind)


def c5_triangle(kind=SUBDIVISION):
    """K_3 in C_5 with paths of lengths 1, 1 and 3."""
    g = cycle_graph(5)
    v = g.vertices
    return Certificate(g, [v[0], v[1], v[2]],
                       {(0, 1): [v[0], v[1]], (1, 2): [v[1], v[2]], (0, 2): [v[0], v[4], v[3], v[2]]}, kind)


# -- certificate mutation ------------------------------------------------------


def mutate(cert: Certificate, rng: random.Random):
    """Apply one random mutation; return (mutated certificate, predicate on the report)."""
    paths = {p: list(v) for p, v in cert.paths.items()}
    terms = list(cert.terminals)
    long_pairs = sorted(p for p, v in paths.items() if len(v) > 2)
    kinds = ["swap-terminals"]
    if long_pairs:
        kinds.append("drop-vertex")
    if cert.kind == SUBDIVISION and len(long_pairs) >= 2:
        kinds.append("share-vertex")
    kind = rng.choice(kinds)
    if kind == "drop-vertex":
        pair = rng.choice(long_pairs)
        pos = rng.randrange(1, len(paths[pair]) - 1)
        del paths[pair][pos]

        def named(rep):
            return any(v.witness.get("pair") == pair for v in rep.violations if v.rule in ("parity", "adjacency"))
    elif kind == "swap-terminals":
        a, b = sorted(rng.sample(range(len(terms)), 2))
        terms[a], terms[b] = terms[b], terms[a]

        def named(rep):
            return any(v.rule == "shape" and a in v.witness.get("pair", ()) for v in rep.violations)
    else:
        p, q = rng.sample(long_pairs, 2)
        x = paths[p][rng.randrange(1, len(paths[p]) - 1)]
        paths[q][rng.randrange(1, len(paths[q]) - 1)] = x

        def named(rep):
            return any(v.rule == "internal-disjointness" and v.witness.get("vertex") == x for v in rep.violations)
    return Certificate(cert.host, terms, paths, cert.kind, cert.meta), named, kind


def passing_certificates():
    grotzsch_k4 = lift_subdivision(c5_triangle(), 2)
    return [build_theorem2(2, 5), build_theorem2(3, 4), build_theorem2(4, 4), build_theorem2(5, 3),
            build_theorem8(Theorem8Params(13, 6)), grotzsch_k4, identity_cert(4),
            build_theorem3(complete_graph(5))]
