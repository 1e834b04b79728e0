"""Explicit totally odd subdivisions of complete graphs in Kneser graphs.

Two families live here, both over the host KG(2k+r, k):

* ``theorem8_*``: for k >= 13, r >= 6 and 2r | k-1, a complete pattern on the
  terminals X_i = [1, k-1] + {k+i}, i in the index set I_{k,r}.  Every path
  is X_i, B^1, ..., B^h, C^h, ..., C^1, X_j with h = (k-1)/r.
* ``theorem2_*``: for k >= 2, r >= 3, a complete pattern on r+2 terminals
  (the chromatic number of the host).  Four regimes: k = 2, k = 3, r >= k >= 4
  and 3 <= r < k.

Every constructed set is checked for cardinality, every path for adjacency,
and any failure raises :class:`ConstructionBug` instead of returning a bad path.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .certify import SUBDIVISION, Certificate
from .errors import ConstructionBug, InvalidInput
from .graphs import KneserOracle, KSubset
from .graphs import interval as iv


@dataclass
class PathFamily:
    """One terminal-to-terminal path with the terminals at both ends."""

    pair: tuple
    vertices: list
    case: str = ""

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def internal(self) -> list:
        return self.vertices[1:-1]


def _set(n: int, k: int, *parts, what: str = "") -> KSubset:
    for part in parts:
        for e in [part] if isinstance(part, int) else part:
            if not 1 <= e <= n:
                raise ConstructionBug(f"{what}: element {e} outside [1, {n}]")
    s = KSubset.union(n, *parts)
    if len(s) != k:
        raise ConstructionBug(f"{what}: built {s!r} of size {len(s)}, expected {k}")
    return s


def _checked(pair, vertices: list, k: int, case: str) -> PathFamily:
    for v in vertices:
        if len(v) != k:
            raise ConstructionBug(f"path {pair}: vertex {v!r} has size {len(v)} != {k}")
    for u, v in zip(vertices, vertices[1:]):
        if not u.isdisjoint(v):
            raise ConstructionBug(f"path {pair}: consecutive vertices {u!r} and {v!r} intersect")
    if len(set(vertices)) != len(vertices):
        raise ConstructionBug(f"path {pair}: repeated vertex")
    if (len(vertices) - 1) % 2 == 0:
        raise ConstructionBug(f"path {pair}: even length {len(vertices) - 1}")
    return PathFamily(pair, vertices, case)


# ---------------------------------------------------------------------------
# Arbitrarily large complete patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Theorem8Params:
    k: int
    r: int

    def __post_init__(self):
        k, r = self.k, self.r
        if not (isinstance(k, int) and isinstance(r, int)):
            raise InvalidInput("k and r must be integers")
        if k < 13:
            raise InvalidInput(f"k must be at least 13, got {k}")
        if r < 6:
            raise InvalidInput(f"r must be at least 6, got {r}")
        if (k - 1) % (2 * r):
            raise InvalidInput(f"2r must divide k-1 (k={k}, r={r})")

    @property
    def n(self) -> int:
        return 2 * self.k + self.r

    @property
    def depth(self) -> int:
        """Number of B sets (and of C sets) on each path."""
        return (self.k - 1) // self.r


def terminal_indices(p: Theorem8Params) -> list[int]:
    """The index set: multiples of 4 in [(k-1)/2 + 1, k+r-3]."""
    lo, hi = (p.k - 1) // 2 + 1, p.k + p.r - 3
    return [i for i in iv(lo, hi) if i % 4 == 0]


def theorem8_terminals(p: Theorem8Params) -> list[KSubset]:
    k = p.k
    return [_set(p.n, k, iv(1, k - 1), k + i, what=f"X_{i}") for i in terminal_indices(p)]


def _t8_B(p: Theorem8Params, i: int, j: int, s: int) -> KSubset:
    k, r, n = p.k, p.r, p.n
    S = (k + i - 1, k + j)
    T = (k + i - 2, k + i, k + j - 1, k + j + 1)
    q = (s - 1) // 2
    what = f"B^{s}_{{{i},{j}}}"
    if s % 2:
        return _set(n, k, iv(1, q * r), S, iv(k + (q + 1) * r - 3, k + i - 3),
                    iv(k + i + 1, k + j - 2), iv(k + j + 2, 2 * k + r), what=what)
    return _set(n, k, iv((q + 1) * r + 1, k + (q + 1) * r - 4), T, what=what)


def _t8_C_case(p: Theorem8Params, i: int, j: int, q: int) -> str:
    k, pr = p.k, q * p.r
    if pr >= k - i - 1:
        return "pr>=k-i-1"
    if pr <= k - j:
        return "pr<=k-j"
    if pr >= k - j + 2:
        return "pr>=k-j+2"
    return "pr=k-j+1"


def _t8_C(p: Theorem8Params, i: int, j: int, s: int) -> KSubset:
    k, r, n = p.k, p.r, p.n
    S = (k + i - 1, k + j)
    T = (k + i - 2, k + i, k + j - 1, k + j + 1)
    q = (s - 1) // 2
    pr = q * r
    case = _t8_C_case(p, i, j, q)
    what = f"C^{s}_{{{i},{j}}} [{case}]"
    odd = s % 2 == 1
    low = iv(1, k - (q + 1) * r - 1)
    if case == "pr>=k-i-1":
        if odd:
            return _set(n, k, iv(k - pr, 2 * k - pr - 5), T, what=what)
        return _set(n, k, low, S, iv(2 * k - pr - 4, k + i - 3), iv(k + i + 1, k + j - 2),
                    iv(k + j + 2, 2 * k + r), what=what)
    if case == "pr<=k-j":
        if odd:
            return _set(n, k, iv(k - pr, k + i - 2), iv(k + i, k + j - 1), iv(k + j + 1, 2 * k - pr + 1),
                        what=what)
        return _set(n, k, low, S, iv(2 * k - pr + 2, 2 * k + r), what=what)
    if case == "pr>=k-j+2":
        if odd:
            return _set(n, k, iv(k - pr, k + i - 2), iv(k + i, 2 * k - pr - 2), (k + j - 1, k + j + 1),
                        what=what)
        return _set(n, k, low, S, iv(2 * k - pr - 1, k + j - 2), iv(k + j + 2, 2 * k + r), what=what)
    if odd:
        return _set(n, k, iv(k - pr, k + i - 2), iv(k + i, 2 * k - pr - 3), (k + j - 1, k + j + 1, k + j + 2),
                    what=what)
    return _set(n, k, low, S, iv(2 * k - pr - 2, k + j - 2), iv(k + j + 3, 2 * k + r), what=what)


def theorem8_sets(p: Theorem8Params, i: int, j: int) -> tuple[list[KSubset], list[KSubset]]:
    """The lists [B^1..B^h] and [C^1..C^h] for the pair i < j."""
    h = p.depth
    return ([_t8_B(p, i, j, s) for s in range(1, h + 1)],
            [_t8_C(p, i, j, s) for s in range(1, h + 1)])


def theorem8_path(p: Theorem8Params, i: int, j: int) -> PathFamily:
    idx = terminal_indices(p)
    if i not in idx or j not in idx or not i < j:
        raise InvalidInput(f"need i < j in the terminal index set {idx}, got i={i}, j={j}")
    k = p.k
    xi = _set(p.n, k, iv(1, k - 1), k + i, what=f"X_{i}")
    xj = _set(p.n, k, iv(1, k - 1), k + j, what=f"X_{j}")
    bs, cs = theorem8_sets(p, i, j)
    cases = sorted({_t8_C_case(p, i, j, (s - 1) // 2) for s in range(1, p.depth + 1)})
    return _checked((i, j), [xi, *bs, *reversed(cs), xj], k, ",".join(cases))


def build_theorem8(p: Theorem8Params) -> Certificate:
    idx = terminal_indices(p)
    terminals = theorem8_terminals(p)
    paths, cases = {}, {}
    for a, b in combinations(range(len(idx)), 2):
        fam = theorem8_path(p, idx[a], idx[b])
        paths[(a, b)] = fam.vertices
        cases[f"X_{idx[a]}-X_{idx[b]}"] = fam.case
    meta = {"construction": "theorem8", "k": p.k, "r": p.r, "indices": idx, "c_cases": cases}
    return Certificate(KneserOracle(p.n, p.k), terminals, paths, SUBDIVISION, meta)


# ---------------------------------------------------------------------------
# K_{r+2} in KG(2k+r, k)
# ---------------------------------------------------------------------------


def _check_t2(k: int, r: int):
    if not (isinstance(k, int) and isinstance(r, int)):
        raise InvalidInput("k and r must be integers")
    if k < 2:
        raise InvalidInput(f"k must be at least 2, got {k}")
    if r < 3:
        raise InvalidInput(f"r must be at least 3, got {r}")


def theorem2_regime(k: int, r: int) -> str:
    _check_t2(k, r)
    if k == 2:
        return "k=2"
    if k == 3:
        return "k=3"
    return "r>=k" if r >= k else "r<k"


def theorem2_labels(k: int, r: int) -> list[str]:
    """Terminal labels in certificate order."""
    _check_t2(k, r)
    if k == 2:
        return [f"X_{i}" for i in iv(1, r // 2 + 2)] + [f"Y_{i}" for i in iv(2, (r + 1) // 2 + 1)]
    return ["Y"] + [f"X_{i}" for i in iv(0, r)]


def _terminal(k: int, r: int, label: str) -> KSubset:
    n = 2 * k + r
    name, _, num = label.partition("_")
    if k == 2:
        i = int(num)
        if name == "X":
            return _set(n, k, 2 * i - 1, 2 * i, what=label)
        return _set(n, k, 2 * i, 2 * i + 1, what=label)
    if name == "Y":
        return _set(n, k, iv(1, k), what=label)
    return _set(n, k, iv(k + 1, 2 * k - 1), 2 * k + int(num), what=label)


def theorem2_terminals(k: int, r: int) -> list[KSubset]:
    return [_terminal(k, r, lab) for lab in theorem2_labels(k, r)]


def _lex_first(cands):
    for c in cands:
        return c
    return None


def _s31_BC(k: int, r: int, i: int, j: int) -> tuple[KSubset, KSubset, str]:
    """Internal vertices of the X_i - X_j path for r >= k >= 4."""
    n = 2 * k + r

    def mk(*parts, what):
        return _set(n, k, *parts, what=f"{what}_{{{i},{j}}}")

    if i == 0 and j == r:
        return (mk(iv(1, k - 1), 2 * k + r, what="B"),
                mk(k, iv(k + r + 1, 2 * k + r - 1), what="C"), "X0-Xr")
    if i == 0:
        B = mk(iv(1, k - 1), 2 * k + j, what="B")
        if j < k:
            return B, mk(k, iv(2 * k + 1, 2 * k + j - 1), iv(2 * k + j + 1, 3 * k), what="C"), "X0-Xj,j<k"
        ab = _lex_first((a, a + k - 1) for a in iv(2 * k, 2 * k + j - 1)
                        if 2 * k + j < a + k - 1 <= 2 * k + r)
        if ab is None:
            raise ConstructionBug(f"no feasible (a,b) for X_0-X_{j}")
        a, b = ab
        return B, mk(k, iv(a, 2 * k + j - 1), iv(2 * k + j + 1, b), what="C"), "X0-Xj,j>=k"
    if j == r:
        if i >= r - k + 2:
            return (mk(iv(1, k - 2), 2 * k + i - 1, 2 * k + r, what="B"),
                    mk(iv(k - 1, k), iv(k + r + 1, 2 * k + i - 2), iv(2 * k + i, 2 * k + r - 1), what="C"),
                    "Xi-Xr,i>=r-k+2")
        B = mk(iv(1, k - 3), 2 * k + i - 1, 2 * k + r - 1, 2 * k + r, what="B")
        if i == 1:
            # 2k+i-2 = 2k-1 lies in X_r; k-2 takes its place
            return B, mk(iv(k - 2, k), 2 * k + 1, iv(k + r + 3, 2 * k + r - 2), what="C"), "X1-Xr,repaired"
        return (B, mk(iv(k - 1, k), (2 * k + i - 2, 2 * k + i), iv(k + r + 3, 2 * k + r - 2), what="C"),
                "Xi-Xr,i<r-k+2")
    B = mk(iv(1, k - 2), 2 * k + i - 1, 2 * k + j, what="B")
    if j - i >= k - 2:
        a = 2 * k + i
        b = a + (j - i) - (k - 3)
        if not a < b <= 2 * k + j - 1:
            raise ConstructionBug(f"no feasible (a,b) for X_{i}-X_{j}")
        return B, mk(iv(k - 1, k), iv(2 * k + i, a), iv(b, 2 * k + j - 1), what="C"), "j-i>=k-2"
    if i >= 2 and j - i <= k - 4:
        ab = _lex_first((a, a + k - 1) for a in iv(2 * k, 2 * k + i - 2)
                        if 2 * k + j + 1 <= a + k - 1 <= 2 * k + r)
        if ab is None:
            raise ConstructionBug(f"no feasible (a,b) for X_{i}-X_{j}")
        a, b = ab
        return (B, mk(iv(k - 1, k), iv(a, 2 * k + i - 2), iv(2 * k + i, 2 * k + j - 1), iv(2 * k + j + 1, b),
                      what="C"), "i>=2,j-i<=k-4")
    b = 3 * k + i - 2
    return B, mk(iv(k - 1, k), iv(2 * k + i, 2 * k + j - 1), iv(2 * k + j + 1, b), what="C"), "i=1 or j-i=k-3"


def _appA_BC(r: int, i: int, j: int) -> tuple[KSubset, KSubset, str]:
    """Internal vertices of the X_i - X_j path for k = 3."""
    n, k = 6 + r, 3

    def mk(*parts, what):
        return _set(n, k, *parts, what=f"{what}_{{{i},{j}}}")

    if i == 0 and j == r:
        return mk(1, 2, 6 + r, what="B"), mk(3, 4 + r, 5 + r, what="C"), "X0-Xr"
    if i == 0:
        B = mk(1, 2, 6 + j, what="B")
        if j <= 2:
            return B, mk(3, iv(7, 5 + j), iv(7 + j, 9), what="C"), "X0-Xj,j<=2"
        return B, mk(3, 5 + j, 7 + j, what="C"), "X0-Xj,j>=3"
    if j == r:
        if i == r - 1:
            return mk(1, 4 + r, 6 + r, what="B"), mk(2, 3, 5 + r, what="C"), "Xi-Xr,i=r-1"
        return mk(1, 5 + i, 6 + r, what="B"), mk(2, 3, 6 + i, what="C"), "Xi-Xr,i<r-1"
    if j - i >= 2:
        return mk(1, 5 + i, 6 + j, what="B"), mk(2, 6 + i, 5 + j, what="C"), "j-i>=2"
    if i == 1 and r == 3:
        return mk(1, 6, 8, what="B"), mk(2, 7, 9, what="C"), "i=1,r=3"
    if i == 1 and r == 4:
        return mk(1, 6, 8, what="B"), mk(3, 9, 10, what="C"), "i=1,r=4"
    if i == 1:
        return mk(1, 6, 8, what="B"), mk(3, 7, 10, what="C"), "i=1,r>=5"
    return mk(1, 5 + i, 7 + i, what="B"), mk(3, 4 + i, 8 + i, what="C"), "j=i+1,i>=2"


def _s32_sets(k: int, r: int, i: int, j: int) -> tuple[list[KSubset], list[KSubset]]:
    """[B^1..B^h] and [C^1..C^h], h = ceil((k-1)/r), for 3 <= r < k."""
    n = 2 * k + r
    h = -(-(k - 1) // r)
    bs, cs = [], []
    for s in range(1, h + 1):
        q = (s - 1) // 2
        pr, p1r = q * r, (q + 1) * r
        tag = f"^{s}_{{{i},{j}}}"
        if i == 0:
            if s % 2:
                B = _set(n, k, iv(1, k - 1 - pr), iv(k + 1, k + pr), 2 * k + j, what="B" + tag)
                C = _set(n, k, iv(p1r + 1, k), iv(2 * k - pr, 2 * k + j - 1), iv(2 * k + j + 1, 2 * k + r),
                         what="C" + tag)
            else:
                B = _set(n, k, iv(k - pr, k), iv(k + p1r + 1, 2 * k + j - 1), iv(2 * k + j + 1, 2 * k + r),
                         what="B" + tag)
                C = _set(n, k, iv(1, p1r), iv(k + 1, 2 * k - p1r - 1), 2 * k + j, what="C" + tag)
        else:
            if s % 2:
                B = _set(n, k, iv(1, k - 2 - pr), iv(k + 1, k + pr), (2 * k + i - 1, 2 * k + j), what="B" + tag)
                C = _set(n, k, iv(p1r, k), iv(2 * k - pr, 2 * k + i - 2), iv(2 * k + i, 2 * k + j - 1),
                         iv(2 * k + j + 1, 2 * k + r), what="C" + tag)
            else:
                B = _set(n, k, iv(k - 1 - pr, k), iv(k + p1r + 1, 2 * k + i - 2), iv(2 * k + i, 2 * k + j - 1),
                         iv(2 * k + j + 1, 2 * k + r), what="B" + tag)
                C = _set(n, k, iv(1, p1r - 1), iv(k + 1, 2 * k - p1r - 1), (2 * k + i - 1, 2 * k + j),
                         what="C" + tag)
        bs.append(B)
        cs.append(C)
    return bs, cs


def theorem2_path(k: int, r: int, a: str, b: str) -> PathFamily:
    """The path joining terminals labelled ``a`` and ``b``, oriented from ``a`` to ``b``."""
    labels = theorem2_labels(k, r)
    if a not in labels or b not in labels or a == b:
        raise InvalidInput(f"need two distinct terminal labels from {labels}, got {a!r}, {b!r}")
    if labels.index(a) > labels.index(b):
        fam = theorem2_path(k, r, b, a)
        return PathFamily((a, b), fam.vertices[::-1], fam.case)
    n = 2 * k + r
    ta, tb = _terminal(k, r, a), _terminal(k, r, b)
    if ta.isdisjoint(tb):
        return _checked((a, b), [ta, tb], k, "edge")
    regime = theorem2_regime(k, r)
    if regime == "k=2":
        # the only non-adjacent pairs are X_i-Y_i and X_{i+1}-Y_i
        xi, yi = int(a.split("_")[1]), int(b.split("_")[1])
        if xi == yi:
            verts = [tb, _set(n, k, 1, 2 * yi - 1, what="P"), _set(n, k, 2, 2 * yi + 1, what="P"), ta]
            case = f"P_{yi}"
        elif xi == yi + 1:
            verts = [tb, _set(n, k, 1, 2 * yi + 2, what="Q"), _set(n, k, 2, 2 * yi, what="Q"), ta]
            case = f"Q_{yi}"
        else:
            raise ConstructionBug(f"unexpected non-adjacent pair {a}, {b}")
        return _checked((a, b), verts[::-1], k, case)
    i, j = int(a.split("_")[1]), int(b.split("_")[1])
    if regime == "r<k":
        bs, cs = _s32_sets(k, r, i, j)
        return _checked((a, b), [ta, *bs, *reversed(cs), tb], k, "i=0" if i == 0 else "i>=1")
    B, C, case = _appA_BC(r, i, j) if regime == "k=3" else _s31_BC(k, r, i, j)
    return _checked((a, b), [ta, B, C, tb], k, case)


def _replacement(n: int, k: int, left: KSubset, right: KSubset, forbidden: set) -> KSubset | None:
    """Lexicographically least k-subset disjoint from both path neighbours and not forbidden."""
    free = [e for e in iv(1, n) if e not in left and e not in right]
    for c in combinations(free, k):
        cand = KSubset.of(n, c)
        if cand not in forbidden:
            return cand
    return None


def _repair_collisions(k: int, r: int, fams: list[PathFamily], terminals: list[KSubset]) -> list:
    """Make internal vertices of distinct paths disjoint, in place.

    Paths are scanned in certificate order; a path that reuses an internal vertex
    already claimed by an earlier path gets that vertex replaced.  Replacements
    avoid every prescribed vertex, so later paths are never disturbed.
    """
    n = 2 * k + r
    forbidden = set(terminals)
    for fam in fams:
        forbidden.update(fam.internal)
    claimed, repairs = {}, []
    for fam in fams:
        for pos in range(1, len(fam.vertices) - 1):
            v = fam.vertices[pos]
            if v not in claimed:
                claimed[v] = fam.pair
                continue
            new = _replacement(n, k, fam.vertices[pos - 1], fam.vertices[pos + 1], forbidden)
            if new is None:
                raise ConstructionBug(f"path {fam.pair}: no replacement for shared vertex {v!r}")
            fam.vertices[pos] = new
            forbidden.add(new)
            claimed[new] = fam.pair
            repairs.append({
                "pair": list(fam.pair), "position": pos, "was": list(v.elements),
                "now": list(new.elements), "collided_with": list(claimed[v]),
            })
    return repairs


def build_theorem2(k: int, r: int) -> Certificate:
    labels = theorem2_labels(k, r)
    terminals = theorem2_terminals(k, r)
    pairs = list(combinations(range(len(labels)), 2))
    fams = [theorem2_path(k, r, labels[x], labels[y]) for x, y in pairs]
    repairs = _repair_collisions(k, r, fams, terminals)
    paths, cases = {}, {}
    for (x, y), fam in zip(pairs, fams):
        _checked(fam.pair, fam.vertices, k, fam.case)
        paths[(x, y)] = fam.vertices
        cases[f"{labels[x]}-{labels[y]}"] = fam.case
    meta = {"construction": "theorem2", "k": k, "r": r, "regime": theorem2_regime(k, r),
            "labels": labels, "cases": cases, "repairs": repairs}
    return Certificate(KneserOracle(2 * k + r, k), terminals, paths, SUBDIVISION, meta)
