"""Zigzags, Kempe chains and the zigzag-driven odd immersion construction.

A zigzag of (G, c) is a vertex sequence with strictly increasing colours in
which every even-position vertex is adjacent to every odd-position vertex.
Every routine here works on a materialized :class:`Graph`; the exhaustive ones
are guarded by the caps in :mod:`oddsub.config`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product

from .certify import IMMERSION, Certificate
from .config import CAPS
from .errors import AlgorithmInvariantViolated, InvalidInput, ResourceLimit
from .graphs import Graph, HostGraph, _bits_of, encode_vertex, materialize, optimal_colouring

# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass
class ProperColouring:
    """Vertex -> colour in [1, t]."""

    assignment: dict
    t: int

    def __post_init__(self):
        bad = [c for c in self.assignment.values() if not (isinstance(c, int) and 1 <= c <= self.t)]
        if bad:
            raise InvalidInput(f"colour {bad[0]!r} outside [1, {self.t}]")

    def __getitem__(self, v) -> int:
        return self.assignment[v]

    def check(self, g: Graph) -> "ProperColouring":
        missing = [v for v in g.vertices if v not in self.assignment]
        if missing:
            raise InvalidInput(f"vertex {missing[0]!r} is uncoloured")
        for u, v in g.edges():
            if self.assignment[u] == self.assignment[v]:
                raise InvalidInput(f"edge {u!r}-{v!r} is monochromatic (colour {self.assignment[u]})")
        return self

    def switched(self, region, i: int, j: int) -> "ProperColouring":
        """Swap colours i and j on the vertices of ``region``."""
        swap = {i: j, j: i}
        new = dict(self.assignment)
        for v in region:
            new[v] = swap.get(new[v], new[v])
        return ProperColouring(new, self.t)

    def vector(self, g: Graph) -> tuple:
        return tuple(self.assignment[v] for v in g.vertices)

    def to_json(self) -> list:
        return [[encode_vertex(v), self.assignment[v]] for v in self.assignment]


@dataclass(frozen=True)
class ZigzagSeq:
    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, k):
        return self.vertices[k]


@dataclass(frozen=True)
class PotentialZigzag:
    vertices: tuple
    twins: tuple
    colour_pair: tuple


@dataclass
class LabelAssignment:
    """For each odd pair i < j, the two even labels (l^i_ij, l^j_ij)."""

    t: int
    labels: dict = field(default_factory=dict)
    degenerate: bool = False

    def label(self, i: int, j: int) -> int:
        """l^i_{ij}: the label at the i end of the pair {i, j}."""
        a, b = sorted((i, j))
        la, lb = self.labels[(a, b)]
        return la if i == a else lb

    def values(self) -> set:
        return {x for pair in self.labels.values() for x in pair}

    def violations(self) -> list[str]:
        out = []
        evens = set(range(2, self.t, 2))
        for (i, j), (li, lj) in self.labels.items():
            if li not in evens or lj not in evens:
                out.append(f"labels of {{{i},{j}}} not even numbers of [t-1]")
            if li == lj and not self.degenerate:
                out.append(f"l^{i} = l^{j} on {{{i},{j}}}")
        odds = range(1, self.t + 1, 2)
        for i in odds:
            others = [j for j in odds if j != i]
            for j, k in combinations(others, 2):
                if self.label(i, j) == self.label(i, k):
                    out.append(f"l^{i}_{{{i},{j}}} = l^{i}_{{{i},{k}}}")
        return out

    def to_json(self) -> dict:
        return {f"{i},{j}": [li, lj] for (i, j), (li, lj) in sorted(self.labels.items())}


@dataclass(frozen=True)
class KempeChain:
    colour_pair: tuple
    vertices: frozenset

    def __contains__(self, v):
        return v in self.vertices

    def __len__(self):
        return len(self.vertices)


# ---------------------------------------------------------------------------
# Helpers on index space
# ---------------------------------------------------------------------------


def _need_graph(g) -> Graph:
    if isinstance(g, Graph):
        return g
    if isinstance(g, HostGraph):
        return materialize(g)
    raise InvalidInput(f"expected a graph, got {type(g).__name__}")


def _colour_list(g: Graph, c) -> list[int]:
    assignment = c.assignment if isinstance(c, ProperColouring) else c
    try:
        col = [assignment[v] for v in g.vertices]
    except KeyError as exc:
        raise InvalidInput(f"vertex {exc.args[0]!r} is uncoloured") from None
    for a in range(len(g)):
        for b in _bits_of(g.row(a)):
            if col[a] == col[b]:
                raise InvalidInput(f"colouring is not proper on edge {g.vertices[a]!r}-{g.vertices[b]!r}")
    return col


def _is_zigzag_idx(rows, col, seq) -> bool:
    for a, b in zip(seq, seq[1:]):
        if not col[a] < col[b]:
            return False
    odd = evn = 0
    for pos, v in enumerate(seq, 1):
        if pos % 2:
            odd |= 1 << v
        else:
            evn |= 1 << v
    for pos, v in enumerate(seq, 1):
        if pos % 2 == 0 and rows[v] & odd != odd:
            return False
    return True


def is_zigzag(g: Graph, c, seq) -> bool:
    """Whether ``seq`` (in the given order) is a zigzag of (g, c)."""
    col = _colour_list(g, c)
    return _is_zigzag_idx([g.row(i) for i in range(len(g))], col, [g.index(v) for v in seq])


def _zigzag_search(rows, col, stop_at=None, budget=None):
    """All maximum zigzags as index tuples, or early exit once ``stop_at`` is reached.

    Returns (best_size, list_of_max_sequences).
    """
    n = len(rows)
    order = sorted(range(n), key=lambda v: (col[v], v))
    colours = sorted(set(col))
    # number of distinct colours strictly above x
    above = {x: len(colours) - 1 - k for k, x in enumerate(colours)}
    best, found = 0, []
    seq: list[int] = []
    steps = 0

    def rec(start: int, odd: int, evn: int):
        nonlocal best, found, steps
        steps += 1
        if budget is not None and steps > budget:
            raise ResourceLimit(f"zigzag search exceeded {budget} steps")
        size = len(seq)
        if size > best:
            best, found = size, [tuple(seq)]
        elif size == best and size:
            found.append(tuple(seq))
        if stop_at is not None and best >= stop_at:
            return True
        if size and size + above[col[seq[-1]]] < best:
            return False
        last = col[seq[-1]] if seq else None
        for pos in range(start, n):
            v = order[pos]
            if last is not None and col[v] <= last:
                continue
            if (size + 1) % 2 == 0:
                if rows[v] & odd != odd:
                    continue
                seq.append(v)
                hit = rec(pos + 1, odd, evn | 1 << v)
            else:
                if rows[v] & evn != evn:
                    continue
                seq.append(v)
                hit = rec(pos + 1, odd | 1 << v, evn)
            seq.pop()
            if hit:
                return True
        return False

    rec(0, 0, 0)
    found.sort()
    return best, found


def max_zigzags(g: Graph, c) -> list[ZigzagSeq]:
    """All maximum zigzags of (g, c), in lexicographic order of vertex indices."""
    g = _need_graph(g)
    col = _colour_list(g, c)
    rows = [g.row(i) for i in range(len(g))]
    _, found = _zigzag_search(rows, col, budget=CAPS.search_budget)
    return [ZigzagSeq(tuple(g.vertices[i] for i in s)) for s in found]


def zig_of_colouring(g: Graph, c) -> int:
    g = _need_graph(g)
    col = _colour_list(g, c)
    best, _ = _zigzag_search([g.row(i) for i in range(len(g))], col, budget=CAPS.search_budget)
    return best


def _clique_lower_bound(rows) -> int:
    n = len(rows)
    best = 1 if n else 0

    def grow(size, cand):
        nonlocal best
        best = max(best, size)
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            grow(size + 1, cand & rows[v])

    grow(0, (1 << n) - 1)
    return best


def _is_bipartite(rows) -> bool:
    side = {}
    for s in range(len(rows)):
        if s in side:
            continue
        side[s] = 0
        todo = [s]
        while todo:
            u = todo.pop()
            for v in _bits_of(rows[u]):
                if v not in side:
                    side[v] = 1 - side[u]
                    todo.append(v)
                elif side[v] == side[u]:
                    return False
    return True


def _colouring_with_small_zig(rows, s: int, budget: int):
    """An ordered partition into independent sets whose zigzags all have size <= s, or None."""
    n = len(rows)
    classes: list[int] = []
    steps = 0

    def doomed(remaining: int) -> bool:
        # Uncoloured vertices will all sit above the placed classes, so a placed
        # zigzag of length s that some remaining vertex extends is unavoidable.
        col = [0] * n
        for k, cls in enumerate(classes, 1):
            for v in _bits_of(cls):
                col[v] = k
        order = sorted((v for v in range(n) if col[v]), key=lambda v: col[v])
        seq_len = 0

        def rec(start: int, last: int, odd: int, evn: int) -> bool:
            nonlocal seq_len
            if seq_len > s:
                return True
            if seq_len == s:
                need = odd if (s + 1) % 2 == 0 else evn
                return any(rows[x] & need == need for x in _bits_of(remaining))
            for pos in range(start, len(order)):
                v = order[pos]
                if col[v] <= last:
                    continue
                even_pos = (seq_len + 1) % 2 == 0
                if rows[v] & (odd if even_pos else evn) != (odd if even_pos else evn):
                    continue
                seq_len += 1
                hit = rec(pos + 1, col[v], odd, evn | 1 << v) if even_pos else rec(pos + 1, col[v], odd | 1 << v, evn)
                seq_len -= 1
                if hit:
                    return True
            return False

        return rec(0, 0, 0, 0)

    def independent_subsets(avail: int):
        verts = list(_bits_of(avail))

        def rec(pos: int, chosen: int, blocked: int):
            if pos == len(verts):
                if chosen:
                    yield chosen
                return
            v = verts[pos]
            if not (blocked >> v) & 1:
                yield from rec(pos + 1, chosen | 1 << v, blocked | rows[v])
            yield from rec(pos + 1, chosen, blocked)

        yield from rec(0, 0, 0)

    def search(remaining: int) -> bool:
        nonlocal steps
        if not remaining:
            return True
        # A vertex with no neighbour in the previous class can drop into it without
        # lengthening any zigzag, so each class may be drawn from that neighbourhood.
        pool = remaining
        if classes:
            reach = 0
            for v in _bits_of(classes[-1]):
                reach |= rows[v]
            pool &= reach
        for cls in independent_subsets(pool):
            steps += 1
            if steps > budget:
                raise ResourceLimit(f"zig search exceeded {budget} steps")
            classes.append(cls)
            rest = remaining & ~cls
            if not doomed(rest) and search(rest):
                return True
            classes.pop()
        return False

    if search((1 << n) - 1):
        col = [0] * n
        for k, cls in enumerate(classes, 1):
            for v in _bits_of(cls):
                col[v] = k
        return col
    return None


@dataclass
class ZigReport:
    zig: int
    chi: int
    witness: dict
    chi_colouring: dict


def zig_report(g: Graph, cap: int | None = None) -> ZigReport:
    """zig(G) with a witnessing colouring, plus chi(G) with an optimal colouring."""
    g = _need_graph(g)
    cap = CAPS.vertices if cap is None else cap
    n = len(g)
    if n > cap:
        raise ResourceLimit(f"{n} vertices exceed the zigzag cap {cap}")
    rows = [g.row(i) for i in range(n)]
    opt = optimal_colouring(g)
    chi = max(opt.values(), default=0)
    lower = _clique_lower_bound(rows)
    if chi >= 3 and not _is_bipartite(rows):
        lower = max(lower, 3)
    zig, witness = chi, opt
    for s in range(lower, chi):
        col = _colouring_with_small_zig(rows, s, CAPS.search_budget)
        if col is not None:
            zig, witness = s, {g.vertices[v]: col[v] for v in range(n)}
            break
    if zig == chi and n:
        sizes = {len(z) for z in max_zigzags(g, opt)}
        if sizes != {chi}:
            raise AlgorithmInvariantViolated(
                f"zig(G) = chi(G) = {chi} but an optimal colouring has maximum zigzags of sizes {sorted(sizes)}")
    return ZigReport(zig, chi, witness, opt)


def zig(g: Graph, cap: int | None = None) -> int:
    """Minimum over proper colourings of the maximum zigzag size."""
    return zig_report(g, cap).zig


# ---------------------------------------------------------------------------
# Kempe chains
# ---------------------------------------------------------------------------


def _component(g: Graph, col, i: int, j: int, x: int) -> int:
    allowed = sum(1 << v for v in range(len(g)) if col[v] in (i, j))
    seen, frontier = 1 << x, 1 << x
    while frontier:
        nxt = 0
        for v in _bits_of(frontier):
            nxt |= g.row(v)
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def kempe_chain(g: Graph, c, i: int, j: int, x) -> KempeChain:
    """The component of the {i, j}-coloured subgraph containing ``x``."""
    g = _need_graph(g)
    col = _colour_list(g, c)
    if not g.contains(x):
        raise InvalidInput(f"{x!r} is not a vertex")
    if i == j:
        raise InvalidInput("a Kempe chain needs two distinct colours")
    xi = g.index(x)
    if col[xi] not in (i, j):
        raise InvalidInput(f"{x!r} has colour {col[xi]}, not in {{{i},{j}}}")
    mask = _component(g, col, i, j, xi)
    return KempeChain(tuple(sorted((i, j))), frozenset(g.vertices[v] for v in _bits_of(mask)))


def _bfs_path(g: Graph, allowed: int, s: int, d: int) -> list[int] | None:
    """Shortest path from s to d inside ``allowed``; neighbours taken in index order."""
    prev = {s: None}
    q = deque([s])
    while q:
        u = q.popleft()
        if u == d:
            out = []
            while u is not None:
                out.append(u)
                u = prev[u]
            return out[::-1]
        for v in _bits_of(g.row(u) & allowed):
            if v not in prev:
                prev[v] = u
                q.append(v)
    return None


# ---------------------------------------------------------------------------
# Even labels on odd colour pairs
# ---------------------------------------------------------------------------


def _label_graph(t: int):
    odds = list(range(1, t + 1, 2))
    nodes = []
    for i, j in combinations(odds, 2):
        nodes += [(i, (i, j)), (j, (i, j))]
    pos = {x: a for a, x in enumerate(nodes)}
    adj = [[] for _ in nodes]
    for a, (end, pair) in enumerate(nodes):
        other = pair[1] if end == pair[0] else pair[0]
        adj[a].append(pos[(other, pair)])
        for k in odds:
            if k not in pair:
                adj[a].append(pos[(end, tuple(sorted((end, k))))])
    return nodes, adj


def assign_even_labels(t: int) -> LabelAssignment:
    """Even labels with l^i_ij != l^j_ij and l^i_ij != l^i_ik, using ceil(t/2)-1 values."""
    if not isinstance(t, int) or t < 5:
        raise InvalidInput(f"even label assignment needs t >= 5, got {t}")
    nodes, adj = _label_graph(t)
    k = math.ceil(t / 2) - 1
    # greedy in BFS order from the first node
    colour = [0] * len(nodes)
    order, seen = [], {0}
    q = deque([0])
    while q:
        a = q.popleft()
        order.append(a)
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                q.append(b)
    for a in order:
        taken = {colour[b] for b in adj[a]}
        colour[a] = next(x for x in range(1, len(nodes) + 2) if x not in taken)
    if max(colour) > k:
        h = Graph(range(len(nodes)), [(a, b) for a in range(len(nodes)) for b in adj[a] if a < b])
        exact = optimal_colouring(h, cap=len(nodes))
        colour = [exact[a] for a in range(len(nodes))]
        if max(colour) > k:
            raise AlgorithmInvariantViolated(f"auxiliary label graph needs {max(colour)} > {k} colours")
    value = {(end, pair): 2 * colour[a] for a, (end, pair) in enumerate(nodes)}
    labels = {pair: (value[(pair[0], pair)], value[(pair[1], pair)])
              for pair in combinations(range(1, t + 1, 2), 2)}
    return LabelAssignment(t, labels)


def _degenerate_labels(t: int) -> LabelAssignment:
    # t = 3, 4: one odd pair {1, 3} and a single even value 2 below t
    return LabelAssignment(t, {(1, 3): (2, 2)}, degenerate=True)


def labels_for(t: int) -> LabelAssignment:
    if t >= 5:
        return assign_even_labels(t)
    if t >= 3:
        return _degenerate_labels(t)
    return LabelAssignment(t, {})


# ---------------------------------------------------------------------------
# Potential zigzags
# ---------------------------------------------------------------------------


def _potential_twins(g: Graph, rows, col, seq: list[int], i: int, j: int):
    for a, b in combinations(range(len(seq)), 2):
        u, v = seq[a], seq[b]
        if col[u] != col[v] or col[u] not in (i, j):
            continue
        other = j if col[u] == i else i
        checked, ok = 0, True
        for y in (u, v):
            # a proper c' exists iff y has no neighbour in the sequence already coloured `other`
            if any(col[z] == other and rows[y] >> z & 1 for z in seq if z != y):
                continue
            trial = list(col)
            trial[y] = other
            perm = sorted(seq, key=lambda z: trial[z])
            checked += 1
            if not _is_zigzag_idx(rows, trial, perm):
                ok = False
                break
        if ok and checked:
            return u, v
    return None


def is_potential_zigzag(g: Graph, c, seq, i: int, j: int):
    """The twin pair making ``seq`` an {i,j}-potential zigzag of (g, c), or None."""
    g = _need_graph(g)
    col = _colour_list(g, c)
    if len(set(seq)) != len(seq):
        raise InvalidInput("sequence vertices must be distinct")
    rows = [g.row(x) for x in range(len(g))]
    idx = [g.index(v) for v in seq]
    tw = _potential_twins(g, rows, col, idx, i, j)
    if tw is None:
        return None
    t = c.t if isinstance(c, ProperColouring) else None
    if t is not None and len(seq) == t:
        off = sorted(col[z] for z in idx if z not in tw)
        expect = [k for k in range(1, t + 1) if k not in (i, j)]
        if off != expect:
            raise AlgorithmInvariantViolated(
                f"potential zigzag off-twin colours {off} differ from {expect}", {"seq": list(seq)})
    return g.vertices[tw[0]], g.vertices[tw[1]]


def potential_zigzags(g: Graph, c: ProperColouring, i: int, j: int) -> list[PotentialZigzag]:
    """Every {i,j}-potential zigzag of a proper t-colouring with t vertices in the sequence.

    Candidates take one vertex from each colour class outside {i, j} and two from
    class i or class j; each is then tested against the definition.
    """
    g = _need_graph(g)
    col = _colour_list(g, c)
    rows = [g.row(x) for x in range(len(g))]
    t = c.t
    by = {k: [v for v in range(len(g)) if col[v] == k] for k in range(1, t + 1)}
    fixed = [by[k] for k in range(1, t + 1) if k not in (i, j)]
    out = []
    for twin_colour in (i, j):
        for pair in combinations(by[twin_colour], 2):
            for rest in product(*fixed):
                seq = sorted([*rest, *pair], key=lambda z: (col[z], z))
                tw = _potential_twins(g, rows, col, seq, i, j)
                if tw is not None:
                    out.append(PotentialZigzag(tuple(g.vertices[z] for z in seq),
                                               (g.vertices[tw[0]], g.vertices[tw[1]]), (i, j)))
    return out


# ---------------------------------------------------------------------------
# Colouring choice
# ---------------------------------------------------------------------------


def _count_full_zigzags(rows, classes: list[int]) -> int:
    """Number of zigzags using one vertex from each of the t classes (colours 1..t)."""
    t = len(classes)
    odd_cls = classes[0::2]
    even_cls = classes[1::2]
    total = 0

    def rec(k: int, common: int, chosen: int):
        nonlocal total
        # common = vertices adjacent to every chosen odd vertex
        for e in even_cls:
            if not e & common:
                return
        if k == len(odd_cls):
            prod = 1
            for e in even_cls:
                prod *= (e & common).bit_count()
            total += prod
            return
        for v in _bits_of(odd_cls[k]):
            rec(k + 1, common & rows[v], chosen | 1 << v)

    if t == 0:
        return 0
    rec(0, (1 << len(rows)) - 1, 0)
    return total


def _proper_colourings(rows, t: int, cap: int):
    n = len(rows)
    col = [0] * n
    count = 0

    def rec(v: int):
        nonlocal count
        if v == n:
            count += 1
            if count > cap:
                raise ResourceLimit(f"more than {cap} proper {t}-colourings")
            yield col
            return
        taken = {col[u] for u in _bits_of(rows[v]) if u < v}
        for x in range(1, t + 1):
            if x not in taken:
                col[v] = x
                yield from rec(v + 1)
        col[v] = 0

    yield from rec(0)


def choose_min_zigzag_colouring(g: Graph, t: int, cap: int | None = None) -> ProperColouring:
    """A proper t-colouring with the fewest maximum zigzags (lexicographically least on ties)."""
    g = _need_graph(g)
    rep = zig_report(g, cap)
    if rep.chi != t:
        raise InvalidInput(f"chi(G) = {rep.chi}, not {t}")
    if rep.zig != t:
        raise InvalidInput(f"zig(G) = {rep.zig}, not {t}")
    n = len(g)
    rows = [g.row(x) for x in range(n)]
    best, best_count = None, None
    for col in _proper_colourings(rows, t, CAPS.colourings):
        classes = [0] * t
        for v, x in enumerate(col):
            classes[x - 1] |= 1 << v
        cnt = _count_full_zigzags(rows, classes)
        if best_count is None or cnt < best_count:
            best, best_count = list(col), cnt
    if best is None:
        raise InvalidInput(f"G has no proper {t}-colouring")
    return ProperColouring({g.vertices[v]: best[v] for v in range(n)}, t)


# ---------------------------------------------------------------------------
# The odd immersion construction
# ---------------------------------------------------------------------------


def allowed_pairs(i: int, j: int, labels: LabelAssignment) -> set:
    li, lj = labels.label(i, j), labels.label(j, i)
    return {frozenset((i, j)), frozenset((i, li)), frozenset((j, lj))}


def _odd_pair_path(g: Graph, rows, col, zz: list[int], i: int, j: int, labels: LabelAssignment):
    """An odd z_i - z_j path whose edges only use the colour pairs {i,j}, {i,l^i}, {j,l^j}."""
    zi, zj = zz[i - 1], zz[j - 1]
    n = len(g)
    g_ij = sum(1 << v for v in range(n) if col[v] in (i, j))
    comp_cache: dict[int, int] = {}

    def comp(x: int) -> int:
        if x not in comp_cache:
            mask = _component(g, col, i, j, x)
            for v in _bits_of(mask):
                comp_cache[v] = mask
        return comp_cache[x]

    c1 = comp(zi)
    if c1 >> zj & 1:
        path = _bfs_path(g, g_ij, zi, zj)
        return path, {"mode": "kempe"}

    def state(**extra):
        return {"pair": [i, j], "regions": [[encode_vertex(g.vertices[v]) for v in _bits_of(C)] for C in regions],
                **extra}

    regions = [c1]
    union = c1
    levels = []  # per level: list of (zigzag index tuple, a, b)
    while True:
        swapped = list(col)
        for v in _bits_of(union):
            swapped[v] = j if col[v] == i else i
        _, maxz = _zigzag_search(rows, swapped, budget=CAPS.search_budget)
        entries = []
        current = regions[-1]
        for s in maxz:
            tw = _potential_twins(g, rows, col, list(s), i, j)
            if tw is None:
                continue
            u, v = tw
            in_u, in_v = bool(current >> u & 1), bool(current >> v & 1)
            out_u, out_v = not union >> u & 1, not union >> v & 1
            if in_u and out_v:
                entries.append((s, u, v))
            elif in_v and out_u:
                entries.append((s, v, u))
            else:
                raise AlgorithmInvariantViolated(
                    "potential zigzag twins are not split between the newest region and the rest",
                    state(zigzag=[encode_vertex(g.vertices[x]) for x in s]))
        if not entries:
            raise AlgorithmInvariantViolated("no potential zigzag among the maximum zigzags after switching",
                                             state(level=len(regions)))
        levels.append(entries)
        bs = sorted({b for _, _, b in entries})
        nxt = 0
        for b in bs:
            nxt |= comp(b)
        if nxt & union:
            raise AlgorithmInvariantViolated("new region meets earlier regions", state())
        regions.append(nxt)
        union |= nxt
        if nxt >> zj & 1:
            break
        if len(regions) > n:
            raise AlgorithmInvariantViolated("region sequence did not reach z_j", state())

    m = len(regions)
    # backtrack the twin chain from z_j
    paths: list[list[int]] = [None] * m
    chain = [None] * (m - 1)  # (zigzag, a_q, b_q) for q = 1..m-1
    b = min(b for _, _, b in levels[m - 2] if comp(b) >> zj & 1)
    paths[m - 1] = _bfs_path(g, comp(b), b, zj)
    for q in range(m - 1, 0, -1):
        s, a, _ = min((e for e in levels[q - 1] if e[2] == b), key=lambda e: (e[0], e[1]))
        chain[q - 1] = (s, a, b)
        if q == 1:
            paths[0] = _bfs_path(g, regions[0], zi, a)
        else:
            b_prev = min(bb for _, _, bb in levels[q - 2] if comp(bb) >> a & 1)
            paths[q - 1] = _bfs_path(g, comp(a), b_prev, a)
            b = b_prev
    if any(p is None for p in paths):
        raise AlgorithmInvariantViolated("a Kempe sub-path is missing", state())

    walk = list(paths[0])
    phi = {v: col[v] for v in walk}
    for q in range(1, m):
        s, a, b = chain[q - 1]
        if col[a] != col[b]:
            raise AlgorithmInvariantViolated("twins carry different colours", state())
        want = labels.label(col[a], j if col[a] == i else i)
        hits = [v for v in s if col[v] == want and v not in (a, b)]
        if len(hits) != 1:
            raise AlgorithmInvariantViolated(f"zigzag has {len(hits)} vertices of colour {want}", state())
        vq = hits[0]
        if not (rows[vq] >> a & 1 and rows[vq] >> b & 1):
            raise AlgorithmInvariantViolated("connector is not adjacent to both twins", state())
        flip = j if col[a] == i else i
        if phi.setdefault(vq, flip) != flip:
            raise AlgorithmInvariantViolated("connector used with both parities", state())
        walk.append(vq)
        for v in paths[q]:
            phi.setdefault(v, col[v])
        walk.extend(paths[q])

    edges = set()
    for u, v in zip(walk, walk[1:]):
        if not rows[u] >> v & 1:
            raise AlgorithmInvariantViolated("walk uses a non-edge", state())
        if phi[u] == phi[v]:
            raise AlgorithmInvariantViolated("parity colouring is not proper on the walk", state())
        edges.add((u, v))
        edges.add((v, u))
    wrows = [0] * n
    for u, v in edges:
        wrows[u] |= 1 << v
    sub = Graph.from_bitmasks(range(n), wrows)
    path = _bfs_path(sub, (1 << n) - 1, zi, zj)
    if path is None or phi[zi] == phi[zj] or (len(path) - 1) % 2 == 0:
        raise AlgorithmInvariantViolated("walk does not contain an odd z_i - z_j path", state())
    info = {"mode": "chain", "m": m, "walk_length": len(walk) - 1}
    return path, info


def colour_audit(cert: Certificate, colouring: dict, labels: LabelAssignment, zz_colour: dict) -> list[str]:
    """Colour-pair discipline for every odd-pair path; returns the offending edges."""
    bad = []
    for (a, b), verts in cert.paths.items():
        i, j = zz_colour[a], zz_colour[b]
        if i % 2 == 0 or j % 2 == 0:
            # direct edge to the extra even terminal
            pairs = {frozenset((min(i, j), max(i, j)))}
        else:
            pairs = allowed_pairs(i, j, labels)
        for u, v in zip(verts, verts[1:]):
            if frozenset((colouring[u], colouring[v])) not in pairs:
                bad.append(f"{{{i},{j}}}: edge {u!r}-{v!r} coloured {colouring[u]},{colouring[v]}")
    return bad


def build_theorem3(g, cap: int | None = None) -> Certificate:
    """Totally odd immersion of K_{floor(t/2)+1} in a graph with zig = chi = t."""
    g = _need_graph(g)
    n = len(g)
    if n == 0:
        raise InvalidInput("empty graph")
    rep = zig_report(g, cap)
    t = rep.chi
    if rep.zig != t:
        raise InvalidInput(f"zig(G) = {rep.zig} differs from chi(G) = {t}")
    c = choose_min_zigzag_colouring(g, t, cap)
    col = [c[v] for v in g.vertices]
    rows = [g.row(x) for x in range(n)]
    _, maxz = _zigzag_search(rows, col, budget=CAPS.search_budget)
    zz = list(maxz[0])
    if len(zz) != t:
        raise AlgorithmInvariantViolated(f"maximum zigzag has size {len(zz)} != {t}")
    labels = labels_for(t)
    term_colours = list(range(1, t + 1, 2))
    if t % 2 == 0:
        term_colours.append(t)
    terminals = [g.vertices[zz[k - 1]] for k in term_colours]
    paths, info = {}, {}
    for a, b in combinations(range(len(term_colours)), 2):
        i, j = term_colours[a], term_colours[b]
        if j % 2 == 0:
            path, how = [zz[i - 1], zz[j - 1]], {"mode": "direct"}
        else:
            path, how = _odd_pair_path(g, rows, col, zz, i, j, labels)
        paths[(a, b)] = [g.vertices[v] for v in path]
        info[f"{i},{j}"] = how
    meta = {
        "construction": "theorem3",
        "t": t,
        "colouring": [col[v] for v in range(n)],
        "zigzag": [encode_vertex(g.vertices[v]) for v in zz],
        "terminal_colours": term_colours,
        "labels": labels.to_json(),
        "degenerate_labels": labels.degenerate,
        "pairs": info,
    }
    cert = Certificate(g, terminals, paths, IMMERSION, meta)
    bad = colour_audit(cert, c.assignment, labels, dict(enumerate(term_colours)))
    if bad:
        raise AlgorithmInvariantViolated("colour-pair discipline broken", {"violations": bad})
    return cert
