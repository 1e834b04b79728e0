"""Certificates for complete-graph subdivisions/immersions and their verifier.

A certificate lists ``t`` terminals of a host graph and one path per unordered
terminal pair.  :func:`verify_subdivision` and :func:`verify_immersion` only
talk to the host through ``contains`` and ``adjacent``, so they work the same
on materialized graphs and on lazy oracles with billions of vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations

from .config import CAPS
from .errors import InvalidInput, ResourceLimit
from .graphs import Graph, HostGraph, encode_vertex, graph_from_json

SUBDIVISION = "subdivision"
IMMERSION = "immersion"


@dataclass
class Certificate:
    """Terminals plus one path per terminal pair, claimed to realize K_t in ``host``.

    ``paths`` maps ``(a, b)`` with ``a < b`` (indices into ``terminals``) to the
    full vertex sequence from ``terminals[a]`` to ``terminals[b]``.
    """

    host: HostGraph
    terminals: list
    paths: dict
    kind: str = SUBDIVISION
    meta: dict = field(default_factory=dict)

    @property
    def pattern_order(self) -> int:
        return len(self.terminals)

    @property
    def pattern(self) -> str:
        return f"K_{self.pattern_order}"

    def path(self, a: int, b: int) -> list:
        if a < b:
            return self.paths[(a, b)]
        return list(reversed(self.paths[(b, a)]))

    def lengths(self) -> dict:
        return {pair: len(p) - 1 for pair, p in self.paths.items()}

    def as_kind(self, kind: str) -> "Certificate":
        return replace(self, kind=kind)

    def to_json(self) -> dict:
        return {
            "host": self.host.to_json(),
            "kind": self.kind,
            "pattern": self.pattern,
            "terminals": [encode_vertex(v) for v in self.terminals],
            "paths": [
                {"pair": [a, b], "vertices": [encode_vertex(v) for v in self.paths[(a, b)]]}
                for a, b in sorted(self.paths)
            ],
            "meta": self.meta,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict, host: HostGraph | None = None) -> "Certificate":
        if not isinstance(obj, dict):
            raise InvalidInput("certificate JSON must be an object")
        try:
            host = host or graph_from_json(obj["host"])
            terminals = [host.decode_vertex(v) for v in obj["terminals"]]
            paths = {}
            for entry in obj["paths"]:
                a, b = entry["pair"]
                if not (isinstance(a, int) and isinstance(b, int)):
                    raise InvalidInput(f"pair {entry['pair']!r} is not two integers")
                verts = [host.decode_vertex(v) for v in entry["vertices"]]
                if a > b:
                    a, b, verts = b, a, verts[::-1]
                if (a, b) in paths:
                    raise InvalidInput(f"pair {[a, b]} listed twice")
                paths[(a, b)] = verts
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"malformed certificate: {exc!r}") from None
        return cls(host, terminals, paths, obj.get("kind", SUBDIVISION), obj.get("meta", {}))


@dataclass
class Violation:
    rule: str
    witness: dict

    def to_json(self) -> dict:
        return {"rule": self.rule, "witness": _jsonable(self.witness)}


@dataclass
class VerificationReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "violations": [v.to_json() for v in self.violations]}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, float, bool)) or x is None:
        return x
    return encode_vertex(x)


def _safe(fn, *args) -> bool:
    try:
        return bool(fn(*args))
    except Exception:  # untrusted input must never crash the verifier
        return False


def _hashable(v) -> bool:
    try:
        hash(v)
    except TypeError:
        return False
    return True


def _common_checks(cert: Certificate, require_odd: bool, out: list) -> list:
    """Checks shared by both verifiers. Returns [(pair, path)] for well-formed paths."""
    host, terms = cert.host, cert.terminals
    t = len(terms)

    seen = {}
    for idx, v in enumerate(terms):
        if not _hashable(v):
            out.append(Violation("terminals", {"index": idx, "reason": "unhashable"}))
            continue
        if v in seen:
            out.append(Violation("terminals", {"index": idx, "duplicate_of": seen[v], "vertex": v}))
        else:
            seen[v] = idx
        if not _safe(host.contains, v):
            out.append(Violation("terminals", {"index": idx, "vertex": v, "reason": "not in host"}))

    keys = set()
    for key in cert.paths:
        if not (isinstance(key, tuple) and len(key) == 2 and all(isinstance(x, int) for x in key)
                and 0 <= key[0] < key[1] < t):
            out.append(Violation("shape", {"pair": key, "reason": "not a terminal pair"}))
        else:
            keys.add(key)
    for pair in combinations(range(t), 2):
        if pair not in keys:
            out.append(Violation("shape", {"pair": pair, "reason": "missing path"}))

    good = []
    for pair in sorted(keys):
        path = cert.paths[pair]
        if not isinstance(path, (list, tuple)) or len(path) < 2:
            out.append(Violation("shape", {"pair": pair, "reason": "path has fewer than two vertices"}))
            continue
        if not all(_hashable(v) for v in path):
            out.append(Violation("shape", {"pair": pair, "reason": "unhashable vertex"}))
            continue
        a, b = pair
        if path[0] != terms[a] or path[-1] != terms[b]:
            out.append(Violation("shape", {"pair": pair, "reason": "endpoints differ from terminals",
                                           "ends": [path[0], path[-1]]}))
        for pos, v in enumerate(path):
            if not _safe(host.contains, v):
                out.append(Violation("membership", {"pair": pair, "position": pos, "vertex": v}))
        for pos in range(len(path) - 1):
            u, v = path[pos], path[pos + 1]
            if not _safe(host.adjacent, u, v):
                out.append(Violation("adjacency", {"pair": pair, "position": pos, "edge": [u, v]}))
        first = {}
        for pos, v in enumerate(path):
            if v in first:
                out.append(Violation("repeated-vertex", {"pair": pair, "vertex": v,
                                                         "positions": [first[v], pos]}))
            else:
                first[v] = pos
        if require_odd and (len(path) - 1) % 2 == 0:
            out.append(Violation("parity", {"pair": pair, "length": len(path) - 1}))
        good.append((pair, path))
    return good


def verify_subdivision(cert: Certificate, require_odd: bool = True) -> VerificationReport:
    """Check that ``cert`` is a (totally odd, if ``require_odd``) subdivision of K_t."""
    out: list[Violation] = []
    good = _common_checks(cert, require_odd, out)
    terminal_index = {v: i for i, v in enumerate(cert.terminals) if _hashable(v)}
    owner = {}
    for pair, path in good:
        for v in path[1:-1]:
            if v in terminal_index:
                out.append(Violation("internal-disjointness",
                                     {"pair": pair, "vertex": v, "terminal": terminal_index[v]}))
            elif v in owner and owner[v] != pair:
                out.append(Violation("internal-disjointness",
                                     {"pair": pair, "vertex": v, "also_in": owner[v]}))
            else:
                owner.setdefault(v, pair)
    return VerificationReport(out)


def verify_immersion(cert: Certificate, require_odd: bool = True) -> VerificationReport:
    """Check that ``cert`` is a (totally odd, if ``require_odd``) immersion of K_t."""
    out: list[Violation] = []
    good = _common_checks(cert, require_odd, out)
    terminal_index = {v: i for i, v in enumerate(cert.terminals) if _hashable(v)}
    owner = {}
    for pair, path in good:
        for v in path[1:-1]:
            if v in terminal_index:
                out.append(Violation("terminal-internal",
                                     {"pair": pair, "vertex": v, "terminal": terminal_index[v]}))
        for pos in range(len(path) - 1):
            key = frozenset((path[pos], path[pos + 1]))
            if key in owner:
                out.append(Violation("edge-disjointness",
                                     {"pair": pair, "edge": [path[pos], path[pos + 1]],
                                      "also_in": owner[key]}))
            else:
                owner[key] = pair
    return VerificationReport(out)


def verify(cert: Certificate, require_odd: bool = True) -> VerificationReport:
    """Dispatch on ``cert.kind``."""
    if cert.kind == IMMERSION:
        return verify_immersion(cert, require_odd)
    return verify_subdivision(cert, require_odd)


# ---------------------------------------------------------------------------
# Exhaustive search oracle
# ---------------------------------------------------------------------------


def brute_force_find_subdivision(host: Graph, t: int, require_odd: bool = True,
                                 budget: int | None = None, cap: int | None = None) -> Certificate | None:
    """Search every terminal set and internally disjoint path system for a K_t subdivision.

    Returns a certificate or ``None`` when the search space is exhausted.
    Raises :class:`ResourceLimit` once more than ``budget`` search nodes are expanded.
    """
    cap = CAPS.vertices if cap is None else cap
    budget = CAPS.search_budget if budget is None else budget
    if not isinstance(host, Graph):
        raise InvalidInput("brute-force search needs a materialized host")
    n = len(host)
    if n > cap:
        raise ResourceLimit(f"{n} vertices exceed the brute-force cap {cap}")
    if t < 1:
        raise InvalidInput("pattern order must be positive")
    rows = [host.row(i) for i in range(n)]
    expansions = 0

    def tick():
        nonlocal expansions
        expansions += 1
        if expansions > budget:
            raise ResourceLimit(f"brute-force search exceeded its budget of {budget} expansions")

    def can_finish(cur: int, parity: int, allowed: int, target: int) -> bool:
        # walk reachability in the parity double cover; necessary for a path to exist
        reach = [0, 0]
        reach[parity] = 1 << cur
        frontier = reach[:]
        while frontier[0] or frontier[1]:
            nxt = [0, 0]
            for p in (0, 1):
                m = frontier[p]
                while m:
                    low = m & -m
                    v = low.bit_length() - 1
                    m ^= low
                    if rows[v] >> target & 1 and (not require_odd or p == 0):
                        return True
                    nxt[1 - p] |= rows[v] & allowed & ~reach[1 - p]
            reach = [reach[0] | nxt[0], reach[1] | nxt[1]]
            frontier = nxt
        return False

    def paths(s: int, d: int, allowed: int):
        """Yield (vertex list, internal mask) of s-d paths through ``allowed``."""
        stack = [s]

        def rec(cur: int, used: int):
            tick()
            if rows[cur] >> d & 1 and (not require_odd or len(stack) % 2 == 1):
                yield stack + [d], used
            free = rows[cur] & allowed & ~used
            while free:
                low = free & -free
                v = low.bit_length() - 1
                free ^= low
                if not can_finish(v, len(stack) % 2, allowed & ~used & ~low, d):
                    continue
                stack.append(v)
                yield from rec(v, used | low)
                stack.pop()

        yield from rec(s, 0)

    full = (1 << n) - 1
    for terms in combinations(range(n), t):
        if any(rows[v].bit_count() < t - 1 for v in terms):
            continue
        term_mask = sum(1 << v for v in terms)
        pairs = list(combinations(range(t), 2))
        # single edges first: they never consume internal vertices
        pairs.sort(key=lambda p: 0 if rows[terms[p[0]]] >> terms[p[1]] & 1 else 1)
        chosen: dict = {}

        def solve(k: int, used: int) -> bool:
            if k == len(pairs):
                return True
            a, b = pairs[k]
            allowed = full & ~term_mask & ~used
            for verts, inner in paths(terms[a], terms[b], allowed):
                chosen[(a, b)] = verts
                if solve(k + 1, used | inner):
                    return True
            chosen.pop((a, b), None)
            return False

        if solve(0, 0):
            vs = host.vertices
            return Certificate(
                host,
                [vs[v] for v in terms],
                {pair: [vs[v] for v in chosen[pair]] for pair in sorted(chosen)},
                SUBDIVISION,
                {"construction": "brute-force"},
            )
    return None
