"""Ground-set combinatorics, host graphs and exact small-graph colouring.

Host graphs come in two flavours.  A :class:`Graph` is materialized: it knows
its vertex list and stores adjacency as one bitmask per vertex.  The oracle
hosts (:class:`KneserOracle`, :class:`SchrijverOracle`,
:class:`MycielskiOracle`) only answer ``contains`` and ``adjacent`` and never
enumerate their vertex set unless explicitly materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Hashable, Iterable, Iterator

from .config import CAPS
from .errors import InvalidInput, ResourceLimit


def interval(lo: int, hi: int) -> range:
    """The integer interval [lo, hi]; empty when hi < lo."""
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# k-subsets as bitmasks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KSubset:
    """A finite subset of [n] stored as a bitmask (bit e set iff e in the set)."""

    mask: int
    n: int

    def __post_init__(self):
        if self.n > CAPS.ground:
            raise InvalidInput(f"ground set [{self.n}] exceeds the bitmask width cap {CAPS.ground}")
        if self.mask < 0 or self.mask & 1 or self.mask >> (self.n + 1):
            raise InvalidInput(f"mask has elements outside [1, {self.n}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "KSubset":
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise InvalidInput(f"element {e} outside [1, {n}]")
            if mask >> e & 1:
                raise InvalidInput(f"repeated element {e}")
            mask |= 1 << e
        return cls(mask, n)

    @classmethod
    def union(cls, n: int, *parts) -> "KSubset":
        """Union of ints and iterables of ints; overlapping parts are allowed."""
        mask = 0
        for part in parts:
            for e in [part] if isinstance(part, int) else part:
                if not 1 <= e <= n:
                    raise InvalidInput(f"element {e} outside [1, {n}]")
                mask |= 1 << e
        return cls(mask, n)

    @property
    def elements(self) -> tuple[int, ...]:
        m, out = self.mask, []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return isinstance(e, int) and e >= 0 and bool(self.mask >> e & 1)

    def isdisjoint(self, other: "KSubset") -> bool:
        return not self.mask & other.mask

    def __repr__(self) -> str:
        runs, elems = [], self.elements
        i = 0
        while i < len(elems):
            j = i
            while j + 1 < len(elems) and elems[j + 1] == elems[j] + 1:
                j += 1
            if j - i >= 2:
                runs.append(f"{elems[i]}..{elems[j]}")
            else:
                runs.extend(str(e) for e in elems[i:j + 1])
            i = j + 1
        return "{" + ",".join(runs) + "}"


def kneser_adjacent(a: KSubset, b: KSubset) -> bool:
    if a.n != b.n or len(a) != len(b):
        raise InvalidInput("k-subsets over different ground sets or of different sizes")
    return a.isdisjoint(b)


def isles(a: KSubset) -> set[int]:
    """Elements of ``a`` with neither neighbour (a-1, a+1) in ``a``. Linear order, no wraparound."""
    m = a.mask
    return set(KSubset(m & ~(m << 1) & ~(m >> 1), a.n))


def gaps(a: KSubset) -> set[int]:
    """Non-elements of ``a`` whose two neighbours both lie in ``a``."""
    m = a.mask
    return set(KSubset(~m & (m << 1) & (m >> 1) & ((1 << (a.n + 1)) - 2), a.n))


# ---------------------------------------------------------------------------
# Mycielski vertices and a total order over every vertex type
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lifted:
    """Vertex (base, level) of a generalized Mycielskian."""

    base: Any
    level: int

    def __repr__(self):
        return f"({self.base!r},{self.level})"


class _Apex:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "w"

    def __reduce__(self):
        return (_Apex, ())


APEX = _Apex()


def vertex_key(v) -> tuple:
    """Sort key giving a deterministic total order across mixed vertex types."""
    if isinstance(v, KSubset):
        return (0, v.elements)
    if isinstance(v, bool):
        return (1, int(v))
    if isinstance(v, int):
        return (1, v)
    if isinstance(v, str):
        return (2, v)
    if isinstance(v, tuple):
        return (3, tuple(vertex_key(x) for x in v))
    if isinstance(v, Lifted):
        return (4, vertex_key(v.base), v.level)
    if v is APEX:
        return (5,)
    return (6, repr(v))


def encode_vertex(v):
    if isinstance(v, KSubset):
        return list(v.elements)
    if isinstance(v, Lifted):
        return {"base": encode_vertex(v.base), "level": v.level}
    if v is APEX:
        return {"apex": True}
    if isinstance(v, tuple):
        return [encode_vertex(x) for x in v]
    return v


def _decode_generic(obj):
    if isinstance(obj, list):
        return tuple(_decode_generic(x) for x in obj)
    if isinstance(obj, dict):
        if obj.get("apex"):
            return APEX
        if "base" in obj and isinstance(obj.get("level"), int):
            return Lifted(_decode_generic(obj["base"]), obj["level"])
        return tuple(sorted((str(k), _decode_generic(x)) for k, x in obj.items()))
    return obj


# ---------------------------------------------------------------------------
# Host graphs
# ---------------------------------------------------------------------------


class HostGraph:
    """Adjacency oracle interface shared by materialized and implicit hosts."""

    kind = "abstract"

    def contains(self, v) -> bool:
        raise NotImplementedError

    def adjacent(self, u, v) -> bool:
        raise NotImplementedError

    def neighbors(self, v) -> list:
        raise NotImplementedError

    def num_vertices(self) -> int:
        raise NotImplementedError

    def iter_vertices(self) -> Iterator:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def decode_vertex(self, obj):
        return _decode_generic(obj)

    def degree(self, v) -> int:
        return len(self.neighbors(v))


class Graph(HostGraph):
    """A materialized simple undirected graph with bitmask adjacency rows."""

    kind = "materialized"

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple] = ()):
        self.vertices: tuple = ()
        self._index: dict = {}
        verts = []
        for v in vertices:
            if v not in self._index:
                self._index[v] = len(verts)
                verts.append(v)
        self.vertices = tuple(verts)
        self._bits = [0] * len(verts)
        for e in edges:
            u, v = e
            if u == v:
                raise InvalidInput(f"loop at {u!r}")
            try:
                iu, iv = self._index[u], self._index[v]
            except KeyError as exc:
                raise InvalidInput(f"edge endpoint {exc.args[0]!r} is not a vertex") from None
            self._bits[iu] |= 1 << iv
            self._bits[iv] |= 1 << iu

    @classmethod
    def from_bitmasks(cls, vertices, bits) -> "Graph":
        g = cls(vertices)
        if len(bits) != len(g.vertices):
            raise InvalidInput("one adjacency row per vertex required")
        g._bits = list(bits)
        return g

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={sum(b.bit_count() for b in self._bits) // 2})"

    def __len__(self):
        return len(self.vertices)

    def index(self, v) -> int:
        return self._index[v]

    def row(self, i: int) -> int:
        """Neighbour bitmask of the vertex with index ``i``."""
        return self._bits[i]

    def contains(self, v) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def adjacent(self, u, v) -> bool:
        iu, iv = self._index.get(u), self._index.get(v)
        if iu is None or iv is None:
            return False
        return bool(self._bits[iu] >> iv & 1)

    def neighbors(self, v) -> list:
        return [self.vertices[j] for j in _bits_of(self._bits[self._index[v]])]

    def degree(self, v) -> int:
        return self._bits[self._index[v]].bit_count()

    def num_vertices(self) -> int:
        return len(self.vertices)

    def iter_vertices(self):
        return iter(self.vertices)

    def edges(self) -> list[tuple]:
        out = []
        for i, b in enumerate(self._bits):
            for j in _bits_of(b >> (i + 1) << (i + 1)):
                out.append((self.vertices[i], self.vertices[j]))
        return out

    def induced(self, keep: Iterable) -> "Graph":
        keep = set(keep)
        verts = [v for v in self.vertices if v in keep]
        return Graph(verts, [(u, v) for u, v in self.edges() if u in keep and v in keep])

    def to_json(self) -> dict:
        return {
            "vertices": [encode_vertex(v) for v in self.vertices],
            "edges": [[encode_vertex(u), encode_vertex(v)] for u, v in self.edges()],
        }


def _bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class KneserOracle(HostGraph):
    """KG(n, k): k-subsets of [n], adjacent iff disjoint."""

    kind = "kneser"

    def __init__(self, n: int, k: int):
        if not (isinstance(n, int) and isinstance(k, int)) or not n >= k >= 1:
            raise InvalidInput(f"Kneser graph needs n >= k >= 1, got n={n}, k={k}")
        if n > CAPS.ground:
            raise InvalidInput(f"n={n} exceeds the bitmask width cap {CAPS.ground}")
        self.n, self.k = n, k

    def __repr__(self):
        return f"{type(self).__name__}({self.n},{self.k})"

    def __eq__(self, other):
        return type(other) is type(self) and (other.n, other.k) == (self.n, self.k)

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.k))

    def contains(self, v) -> bool:
        return isinstance(v, KSubset) and v.n == self.n and len(v) == self.k

    def adjacent(self, u, v) -> bool:
        return self.contains(u) and self.contains(v) and u.isdisjoint(v)

    def neighbors(self, v) -> list:
        if not self.contains(v):
            raise InvalidInput(f"{v!r} is not a vertex of {self!r}")
        rest = [e for e in range(1, self.n + 1) if e not in v]
        return [u for u in (KSubset.of(self.n, c) for c in combinations(rest, self.k)) if self.contains(u)]

    def num_vertices(self) -> int:
        return math.comb(self.n, self.k)

    def iter_vertices(self):
        for c in combinations(range(1, self.n + 1), self.k):
            v = KSubset.of(self.n, c)
            if self.contains(v):
                yield v

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": {"n": self.n, "k": self.k}}

    def decode_vertex(self, obj):
        if isinstance(obj, list) and all(isinstance(e, int) and not isinstance(e, bool) for e in obj):
            try:
                return KSubset.of(self.n, obj)
            except InvalidInput:
                pass
        return _decode_generic(obj)


class SchrijverOracle(KneserOracle):
    """SG(n, k): the stable k-subsets (no two cyclically consecutive elements)."""

    kind = "schrijver"

    def contains(self, v) -> bool:
        if not super().contains(v):
            return False
        m = v.mask
        if m & (m << 1):
            return False
        return not (m >> 1 & 1 and m >> self.n & 1 and self.n > 1)

    def num_vertices(self) -> int:
        n, k = self.n, self.k
        if k == 1:
            return n
        if n < 2 * k:
            return 0
        return n * math.comb(n - k - 1, k - 1) // k


class MycielskiOracle(HostGraph):
    """The m-level generalized Mycielskian of a base host."""

    kind = "mycielski"

    def __init__(self, base: HostGraph, m: int):
        if not isinstance(m, int) or m < 2:
            raise InvalidInput(f"Mycielskian level m must be >= 2, got {m!r}")
        self.base, self.m = base, m

    def __repr__(self):
        return f"MycielskiOracle({self.base!r},{self.m})"

    def contains(self, v) -> bool:
        if v is APEX:
            return True
        return isinstance(v, Lifted) and 0 <= v.level < self.m and self.base.contains(v.base)

    def adjacent(self, u, v) -> bool:
        if not (self.contains(u) and self.contains(v)):
            return False
        if u is APEX and v is APEX:
            return False
        if u is APEX or v is APEX:
            other = v if u is APEX else u
            return other.level == self.m - 1
        if not self.base.adjacent(u.base, v.base):
            return False
        lo, hi = sorted((u.level, v.level))
        return (lo == hi == 0) or hi == lo + 1

    def neighbors(self, v) -> list:
        if v is APEX:
            return [Lifted(b, self.m - 1) for b in self.base.iter_vertices()]
        if not self.contains(v):
            raise InvalidInput(f"{v!r} is not a vertex of {self!r}")
        out = []
        bn = self.base.neighbors(v.base)
        if v.level == 0:
            out += [Lifted(u, 0) for u in bn]
        else:
            out += [Lifted(u, v.level - 1) for u in bn]
        if v.level + 1 < self.m:
            out += [Lifted(u, v.level + 1) for u in bn]
        else:
            out.append(APEX)
        return out

    def num_vertices(self) -> int:
        return self.base.num_vertices() * self.m + 1

    def iter_vertices(self):
        base = list(self.base.iter_vertices())
        for level in range(self.m):
            for b in base:
                yield Lifted(b, level)
        yield APEX

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": {"base": self.base.to_json(), "m": self.m}}

    def decode_vertex(self, obj):
        if isinstance(obj, dict):
            if obj.get("apex") is True:
                return APEX
            if "base" in obj and isinstance(obj.get("level"), int):
                return Lifted(self.base.decode_vertex(obj["base"]), obj["level"])
        return _decode_generic(obj)


# ---------------------------------------------------------------------------
# Construction, materialization, JSON
# ---------------------------------------------------------------------------


def make_host(kind: str, params: dict | None = None, *, materialize_cap: int | None = None) -> HostGraph:
    """Build a host by name.

    ``kind`` is one of ``kneser``, ``schrijver``, ``mycielski``,
    ``materialized`` (params ``vertices``/``edges``), ``kneser-materialized``,
    ``complete`` (``n``), ``cycle`` (``n``) or ``path`` (``n``).
    """
    params = dict(params or {})
    try:
        if kind == "kneser":
            return KneserOracle(params["n"], params["k"])
        if kind == "schrijver":
            return SchrijverOracle(params["n"], params["k"])
        if kind == "mycielski":
            base = params["base"]
            if isinstance(base, dict):
                base = graph_from_json(base)
            return MycielskiOracle(base, params["m"])
        if kind == "materialized":
            return Graph(params["vertices"], params.get("edges", ()))
        if kind == "kneser-materialized":
            return materialize(KneserOracle(params["n"], params["k"]), cap=materialize_cap)
        if kind == "complete":
            return complete_graph(params["n"])
        if kind == "cycle":
            return cycle_graph(params["n"])
        if kind == "path":
            return path_graph(params["n"])
    except KeyError as exc:
        raise InvalidInput(f"missing parameter {exc.args[0]!r} for host kind {kind!r}") from None
    raise InvalidInput(f"unknown host kind {kind!r}")


def materialize(host: HostGraph, cap: int | None = None) -> Graph:
    """Enumerate an oracle host into a :class:`Graph`, refusing beyond ``cap`` vertices."""
    if isinstance(host, Graph):
        return host
    cap = CAPS.materialize if cap is None else cap
    count = host.num_vertices()
    if count > cap:
        raise ResourceLimit(f"{host!r} has {count} vertices, above the materialization cap {cap}")
    verts = sorted(host.iter_vertices(), key=vertex_key)
    if isinstance(host, KneserOracle):
        return Graph.from_bitmasks(verts, _kneser_rows(verts))
    edges = []
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            if host.adjacent(verts[a], verts[b]):
                edges.append((verts[a], verts[b]))
    return Graph(verts, edges)


def _kneser_rows(verts: list[KSubset]) -> list[int]:
    # Disjointness rows are computed independently of the oracle's adjacent().
    if not verts:
        return []
    if verts[0].n <= 62:
        import numpy as np

        masks = np.array([v.mask for v in verts], dtype=np.int64)
        rows = []
        for m in masks:
            hit = (masks & m) == 0
            rows.append(int.from_bytes(np.packbits(hit, bitorder="little").tobytes(), "little"))
        return rows
    rows = []
    for v in verts:
        row = 0
        for j, u in enumerate(verts):
            if not v.mask & u.mask:
                row |= 1 << j
        rows.append(row)
    return rows


def graph_from_json(obj: dict) -> HostGraph:
    if not isinstance(obj, dict):
        raise InvalidInput("graph JSON must be an object")
    if "kind" in obj:
        return make_host(obj["kind"], obj.get("params", {}))
    if "vertices" in obj:
        verts = [_decode_generic(v) for v in obj["vertices"]]
        edges = []
        for e in obj.get("edges", []):
            if not isinstance(e, list) or len(e) != 2:
                raise InvalidInput(f"malformed edge {e!r}")
            edges.append((_decode_generic(e[0]), _decode_generic(e[1])))
        return Graph(verts, edges)
    raise InvalidInput("graph JSON needs either 'kind' or 'vertices'")


def complete_graph(n: int) -> Graph:
    return Graph(range(n), combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("cycles need at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def edgeless_graph(n: int) -> Graph:
    return Graph(range(n))


# ---------------------------------------------------------------------------
# Exact colouring (DSATUR branch and bound)
# ---------------------------------------------------------------------------


def optimal_colouring(g: Graph, cap: int | None = None) -> dict:
    """A proper colouring of ``g`` with colours 1..chi(g), found by DSATUR branch and bound."""
    cap = CAPS.chromatic if cap is None else cap
    if not isinstance(g, Graph):
        raise InvalidInput("exact colouring needs a materialized graph")
    n = len(g)
    if n > cap:
        raise ResourceLimit(f"{n} vertices exceed the exact-colouring cap {cap}")
    if n == 0:
        return {}
    rows = [g.row(i) for i in range(n)]
    best = _greedy_dsatur(rows)
    best_k = max(best) + 1
    lower = _greedy_clique_size(rows)

    colour = [-1] * n
    # used[c] = bitmask of vertices coloured c
    used: list[int] = []

    def pick() -> int:
        best_v, best_key = -1, None
        for v in range(n):
            if colour[v] >= 0:
                continue
            sat = sum(1 for cls in used if cls & rows[v])
            key = (sat, rows[v].bit_count())
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def search(coloured: int):
        nonlocal best, best_k
        if best_k == lower:
            return
        if coloured == n:
            if len(used) < best_k:
                best_k = len(used)
                best = colour[:]
            return
        v = pick()
        for c, cls in enumerate(used):
            if not cls & rows[v]:
                colour[v] = c
                used[c] |= 1 << v
                search(coloured + 1)
                used[c] ^= 1 << v
                colour[v] = -1
        if len(used) + 1 < best_k:
            colour[v] = len(used)
            used.append(1 << v)
            search(coloured + 1)
            used.pop()
            colour[v] = -1

    search(0)
    return {g.vertices[i]: best[i] + 1 for i in range(n)}


def chromatic_number_exact(g: Graph, cap: int | None = None) -> int:
    col = optimal_colouring(g, cap)
    return max(col.values(), default=0)


def _greedy_dsatur(rows: list[int]) -> list[int]:
    n = len(rows)
    colour = [-1] * n
    for _ in range(n):
        best_v, best_key = -1, None
        for v in range(n):
            if colour[v] >= 0:
                continue
            sat = len({colour[u] for u in _bits_of(rows[v]) if colour[u] >= 0})
            key = (sat, rows[v].bit_count())
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        taken = {colour[u] for u in _bits_of(rows[best_v])}
        c = 0
        while c in taken:
            c += 1
        colour[best_v] = c
    return colour


def _greedy_clique_size(rows: list[int]) -> int:
    best = 1 if rows else 0
    for start in range(len(rows)):
        clique, cand = 1, rows[start]
        while cand:
            v = max(_bits_of(cand), key=lambda u: (rows[u] & cand).bit_count())
            clique += 1
            cand &= rows[v]
        best = max(best, clique)
    return best
