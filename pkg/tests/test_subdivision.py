import pytest

from superdom.graph import Graph, complete_graph, cycle_graph, disjoint_union, paw_graph, path_graph, star_graph
from superdom.acceptance import atlas
from superdom.subdivision import (
    build_superdom_set_subdivision,
    gamma_sp_subdivision_value,
    pattern,
    subdivision_additivity,
)
from superdom.superdom import gamma_sp_closed_form, gamma_sp_exact, verify_super_dom


def test_value_examples():
    v = gamma_sp_subdivision_value(complete_graph(3), 3)
    assert v.value == 6 and v.provenance.startswith("k≡3")
    assert gamma_sp_subdivision_value(complete_graph(3), 5).value == 10 == gamma_sp_closed_form("cycle", 18)
    assert gamma_sp_subdivision_value(cycle_graph(4), 2).value == 6 == gamma_sp_closed_form("cycle", 12)


def test_build_examples():
    _, cert, _ = build_superdom_set_subdivision(complete_graph(2), 3)
    assert cert.size == 3
    _, cert, _ = build_superdom_set_subdivision(complete_graph(3), 1)
    assert cert.size == 4
    _, cert, _ = build_superdom_set_subdivision(complete_graph(3), 4)
    assert cert.size == 8


def test_additivity_examples():
    rows, total = subdivision_additivity(disjoint_union(complete_graph(3), complete_graph(2)), 3)
    assert [r.value for r in rows] == [6, 3] and total == 9
    assert subdivision_additivity(disjoint_union(complete_graph(3), complete_graph(3)), 1)[1] == 8
    assert subdivision_additivity(Graph.from_edges(0, []), 2)[1] == 0


@pytest.mark.parametrize("g", [path_graph(3), paw_graph(), complete_graph(4), cycle_graph(5), star_graph(3)])
def test_monotone_in_k(g):
    for k in range(1, 9):
        assert gamma_sp_subdivision_value(g, k + 4).value - gamma_sp_subdivision_value(g, k).value == 2 * g.m


def test_patterns_stay_inside_super_edge():
    names = ["k3.image", "k3.free", "k1.image_a", "k1.image_b", "k1.free_a", "k1.free_b",
             "k0.matched", "k0.from_a", "k0.other", "k2.m1", "k2.m2", "k2.from_m1", "k2.rest"]
    residue = {"k3": 3, "k1": 1, "k0": 0, "k2": 2}
    for name in names:
        for t in range(0, 4):
            k = 4 * t + residue[name[:2]]
            if k == 0:
                continue
            assert pattern(name, k) <= set(range(1, k + 1))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_all_small_graphs_build_and_match_search(k):
    for g in atlas(5):
        sd, cert, _ = build_superdom_set_subdivision(g, k)
        verify_super_dom(sd.result, cert.d)
        assert cert.size == gamma_sp_subdivision_value(g, k).value
        if sd.result.n <= 18:
            assert cert.size == gamma_sp_exact(sd.result).value


def test_k_zero_delegates_to_search():
    assert gamma_sp_subdivision_value(paw_graph(), 0).value == gamma_sp_exact(paw_graph()).value
    with pytest.raises(ValueError):
        gamma_sp_subdivision_value(paw_graph(), -1)
