from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oddsub.errors import InvalidInput, ResourceLimit
from oddsub.graphs import (
    APEX,
    Graph,
    KneserOracle,
    KSubset,
    Lifted,
    MycielskiOracle,
    SchrijverOracle,
    chromatic_number_exact,
    complete_graph,
    cycle_graph,
    gaps,
    graph_from_json,
    interval,
    isles,
    kneser_adjacent,
    make_host,
    materialize,
    path_graph,
)


def S(n, *parts):
    return KSubset.union(n, *parts)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def test_interval_empty_when_reversed():
    assert list(interval(5, 4)) == []
    assert list(interval(3, 5)) == [3, 4, 5]


def test_ksubset_rejects_out_of_range_and_duplicates():
    with pytest.raises(InvalidInput):
        KSubset.of(5, [0, 1])
    with pytest.raises(InvalidInput):
        KSubset.of(5, [6])
    with pytest.raises(InvalidInput):
        KSubset.of(8, [2, 2])
    assert KSubset.union(8, [1, 2], [2, 3]).elements == (1, 2, 3)


def test_ksubset_ground_cap():
    with pytest.raises(InvalidInput):
        KSubset.of(129, [1])


def test_ksubset_repr_compresses_runs():
    assert repr(KSubset.of(32, [1, 2])) == "{1,2}"
    assert repr(S(32, interval(1, 12), [21])) == "{1..12,21}"
    assert repr(KSubset.of(9, [1, 2, 3, 5, 6])) == "{1..3,5,6}"


def test_kneser_adjacency_worked_example():
    x8 = S(32, interval(1, 12), [21])
    b1 = S(32, [20, 25], interval(16, 18), interval(22, 23), interval(27, 32))
    assert kneser_adjacent(x8, b1)
    assert not kneser_adjacent(x8, S(32, interval(1, 12), [22]))


def test_isles_and_gaps_small():
    a = KSubset.of(8, [1, 3, 4, 6])
    assert isles(a) == {1, 6}
    assert gaps(a) == {2, 5}


def test_isles_and_gaps_on_theorem8_sets():
    b1 = S(32, [20, 25], interval(16, 18), interval(22, 23), interval(27, 32))
    b2 = S(32, interval(7, 15), [19, 21, 24, 26])
    assert isles(b1) == {20, 25}
    assert gaps(b2) == {20, 25}


def test_isles_are_linear_not_cyclic():
    # 1 and n are not neighbours of each other
    a = KSubset.of(6, [1, 6])
    assert isles(a) == {1, 6}
    assert gaps(a) == set()


def test_schrijver_membership_is_cyclic():
    sg = SchrijverOracle(5, 2)
    assert sg.contains(KSubset.of(5, [1, 3]))
    assert not sg.contains(KSubset.of(5, [1, 5]))
    assert not sg.contains(KSubset.of(5, [1, 2]))
    assert sg.num_vertices() == 5
    assert len(list(sg.iter_vertices())) == 5


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (7, 3), (8, 3), (9, 4)])
def test_kneser_materialization_matches_direct_enumeration(n, k):
    g = materialize(KneserOracle(n, k))
    subsets = [frozenset(c) for c in combinations(range(1, n + 1), k)]
    expected = {frozenset((a, b)) for a, b in combinations(subsets, 2) if not a & b}
    got = {frozenset((frozenset(u.elements), frozenset(v.elements))) for u, v in g.edges()}
    assert len(g) == len(subsets)
    assert got == expected


@pytest.mark.parametrize("n,k", [(7, 2), (9, 3), (10, 4)])
def test_schrijver_materialization_matches_networkx_subgraph(n, k):
    def stable(c):
        s = set(c)
        return all((x % n) + 1 not in s for x in s)

    subsets = [frozenset(c) for c in combinations(range(1, n + 1), k) if stable(c)]
    g = materialize(SchrijverOracle(n, k))
    assert len(g) == len(subsets) == SchrijverOracle(n, k).num_vertices()
    expected = nx.Graph()
    expected.add_nodes_from(subsets)
    expected.add_edges_from((a, b) for a, b in combinations(subsets, 2) if not a & b)
    got = nx.relabel_nodes(to_nx(g), lambda v: frozenset(v.elements))
    assert nx.utils.graphs_equal(got, expected)


def test_petersen():
    g = materialize(KneserOracle(5, 2))
    assert nx.is_isomorphic(to_nx(g), nx.petersen_graph())
    assert chromatic_number_exact(g) == 3


def test_mycielskian_of_k2_is_c5():
    g = materialize(MycielskiOracle(complete_graph(2), 2))
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(5))


def test_grotzsch_graph():
    g = materialize(MycielskiOracle(cycle_graph(5), 2))
    h = to_nx(g)
    assert len(g) == 11 and h.number_of_edges() == 20
    assert sum(nx.triangles(h).values()) == 0
    assert chromatic_number_exact(g) == 4


@pytest.mark.parametrize("m", [2, 3, 4])
def test_mycielskian_degrees(m):
    base = cycle_graph(5)
    mu = MycielskiOracle(base, m)
    assert mu.num_vertices() == 5 * m + 1
    assert mu.degree(APEX) == 5
    for v in base.vertices:
        assert mu.degree(Lifted(v, 0)) == 2 * base.degree(v)
        assert mu.degree(Lifted(v, m - 1)) == base.degree(v) + 1
        for lvl in range(1, m - 1):
            assert mu.degree(Lifted(v, lvl)) == 2 * base.degree(v)


def test_mycielskian_adjacency_rules():
    mu = MycielskiOracle(path_graph(3), 3)
    a, b, c = path_graph(3).vertices
    assert mu.adjacent(Lifted(a, 0), Lifted(b, 0))
    assert mu.adjacent(Lifted(a, 0), Lifted(b, 1))
    assert mu.adjacent(Lifted(b, 2), Lifted(c, 1))
    assert not mu.adjacent(Lifted(a, 1), Lifted(b, 1))
    assert not mu.adjacent(Lifted(a, 0), Lifted(b, 2))
    assert mu.adjacent(Lifted(a, 2), APEX)
    assert not mu.adjacent(Lifted(a, 1), APEX)


@pytest.mark.parametrize("g,chi", [(complete_graph(4), 4), (cycle_graph(5), 3), (cycle_graph(6), 2),
                                   (path_graph(1), 1), (Graph([]), 0)])
def test_chromatic_number_examples(g, chi):
    assert chromatic_number_exact(g) == chi


def test_materialize_cap():
    with pytest.raises(ResourceLimit):
        materialize(KneserOracle(20, 5), cap=100)


def test_json_round_trip():
    for host in (KneserOracle(7, 3), SchrijverOracle(7, 2), MycielskiOracle(cycle_graph(5), 3), cycle_graph(4)):
        back = graph_from_json(host.to_json())
        assert back.num_vertices() == host.num_vertices()
        assert to_nx(materialize(back)).number_of_edges() == to_nx(materialize(host)).number_of_edges()


def test_make_host_rejects_unknown_kind():
    with pytest.raises(InvalidInput):
        make_host("hypercube", {"n": 3})


@st.composite
def subsets(draw, max_n=40):
    n = draw(st.integers(2, max_n))
    elems = draw(st.sets(st.integers(1, n), min_size=1, max_size=n))
    return KSubset.of(n, elems)


@given(subsets())
def test_isles_and_gaps_by_definition(a):
    s = set(a.elements)
    assert isles(a) == {x for x in s if x - 1 not in s and x + 1 not in s}
    assert gaps(a) == {x for x in range(1, a.n + 1) if x not in s and x - 1 in s and x + 1 in s}


@given(subsets(), st.data())
def test_kneser_adjacency_is_disjointness(a, data):
    elems = data.draw(st.sets(st.integers(1, a.n), min_size=len(a), max_size=len(a)))
    b = KSubset.of(a.n, elems)
    assert kneser_adjacent(a, b) == (not set(a.elements) & set(b.elements))
    assert kneser_adjacent(a, b) == kneser_adjacent(b, a)


@given(st.integers(4, 9), st.data())
def test_kneser_neighbors_are_exactly_disjoint_sets(n, data):
    k = data.draw(st.integers(1, n // 2))
    kg = KneserOracle(n, k)
    v = KSubset.of(n, data.draw(st.sets(st.integers(1, n), min_size=k, max_size=k)))
    nbrs = set(kg.neighbors(v))
    assert all(kg.adjacent(v, u) for u in nbrs)
    assert len(nbrs) == len(list(combinations(range(n - k), k)))


@given(st.integers(2, 7), st.integers(2, 4))
def test_mycielski_edge_count(n, m):
    base = cycle_graph(n) if n >= 3 else path_graph(n)
    e = len(base.edges())
    g = materialize(MycielskiOracle(base, m))
    # level-0 copy, m-1 inter-level copies (both directions), and n apex spokes
    assert len(g.edges()) == e + 2 * e * (m - 1) + n
