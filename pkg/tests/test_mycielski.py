
import pytest

from oddsub.certify import IMMERSION, SUBDIVISION, Certificate, verify_immersion, verify_subdivision
from oddsub.errors import InvalidInput
from oddsub.graphs import APEX, Graph, Lifted, MycielskiOracle, complete_graph, cycle_graph, materialize
from oddsub.mycielski_lift import LiftInput, lift_immersion, lift_subdivision
from oddsub.zigzag import build_theorem3

from oracles import c5_triangle, identity_cert


def long_paths_cert():
    """K_3 in C_9 with three paths of length 3 (no single-edge path)."""
    g = cycle_graph(9)
    v = g.vertices
    return Certificate(g, [v[0], v[3], v[6]], {(0, 1): list(v[0:4]), (1, 2): list(v[3:7]),
                                               (0, 2): [v[0], v[8], v[7], v[6]]})


def test_grotzsch_k4_subdivision():
    cert = lift_subdivision(c5_triangle(), 2)
    assert cert.host.num_vertices() == 11
    assert cert.pattern_order == 4
    assert verify_subdivision(cert).passed
    assert cert.meta["case"] == "B"
    # the lifted certificate is also valid against the materialized graph
    g = materialize(cert.host)
    assert verify_subdivision(Certificate(g, cert.terminals, cert.paths)).passed


@pytest.mark.parametrize("t", [3, 4])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_lift_complete_graph_immersions(t, m):
    cert = lift_immersion(identity_cert(t, IMMERSION), m)
    assert cert.pattern_order == t + 1
    rep = verify_immersion(cert)
    assert rep.passed, rep.to_json()
    assert all((len(p) - 1) % 2 for p in cert.paths.values())


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_lift_complete_graph_subdivisions(m):
    cert = lift_subdivision(identity_cert(4, SUBDIVISION), m)
    assert verify_subdivision(cert).passed


def test_double_iteration():
    k4 = lift_immersion(identity_cert(3, IMMERSION), 2)
    k5 = lift_immersion(k4, 3)
    assert k5.pattern_order == 5
    assert verify_immersion(k5).passed
    s4 = lift_subdivision(c5_triangle(), 2)
    s5 = lift_subdivision(s4, 2)
    assert verify_subdivision(s5).passed


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_case_a_spokes(m):
    base = long_paths_cert()
    cert = lift_subdivision(base, m)
    assert cert.meta["case"] == "A"
    assert verify_subdivision(cert).passed, verify_subdivision(cert).to_json()
    if m >= 3:
        spokes = cert.meta["spokes"]
        assert len(set(map(str, spokes))) == len(spokes)
    # base paths keep their lengths on level 0
    for pair, path in base.paths.items():
        assert len(cert.paths[pair]) == len(path)
        assert all(v.level == 0 for v in cert.paths[pair][1:-1])
    # spokes reach the apex from level m-1
    t = base.pattern_order
    for i in range(t):
        spoke = cert.paths[(i, t)]
        assert spoke[-1] is APEX and spoke[-2] == Lifted(base.terminals[i], m - 1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_case_b_parity(m):
    base = c5_triangle()
    cert = lift_subdivision(base, m)
    hub = cert.meta["hub"]
    t = base.pattern_order
    assert cert.terminals[t] == Lifted(base.terminals[hub], 1)
    hub_path = cert.paths[(hub, t)]
    assert len(hub_path) - 1 == 2 * m - 1
    # hub paths and the copy paths use complementary levels on each base vertex
    for k in range(t):
        if k == hub:
            continue
        to_hub = cert.paths[(min(hub, k), max(hub, k))]
        to_copy = cert.paths[(k, t)]
        assert {v for v in to_hub[1:-1]}.isdisjoint(to_copy[1:-1])
        assert len(to_hub) == len(to_copy) == len(base.path(hub, k))


def test_untouched_paths_are_copied_to_level_zero():
    base = c5_triangle()
    cert = lift_subdivision(base, 3)
    hub = cert.meta["hub"]
    for (a, b), path in base.paths.items():
        if hub not in (a, b):
            assert cert.paths[(a, b)] == [Lifted(v, 0) for v in path]


def test_lift_of_theorem3_immersion():
    base = build_theorem3(complete_graph(5))
    for m in (2, 3):
        assert verify_immersion(lift_immersion(base, m)).passed


def test_lift_input_validation():
    with pytest.raises(InvalidInput):
        LiftInput(identity_cert(3, IMMERSION), 1)
    broken = identity_cert(3, IMMERSION)
    broken.paths[(0, 1)] = [broken.terminals[0], broken.terminals[2], broken.terminals[1]]
    with pytest.raises(InvalidInput):
        lift_immersion(broken, 2)


def test_lift_input_dataclass_entry_point():
    cert = lift_immersion(LiftInput(identity_cert(3, IMMERSION), 3))
    assert cert.meta["m"] == 3
    assert isinstance(cert.host, MycielskiOracle)


def test_lift_subdivision_of_single_long_path():
    g = Graph(range(8), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 2), (1, 6), (6, 7), (7, 3)])
    v = g.vertices
    cert = Certificate(g, [v[0], v[2]], {(0, 1): [v[0], v[1], v[6], v[7], v[3], v[2]]})
    assert verify_subdivision(cert).passed
    lifted = lift_subdivision(cert, 3)
    assert lifted.meta["case"] == "A"
    assert verify_subdivision(lifted).passed
