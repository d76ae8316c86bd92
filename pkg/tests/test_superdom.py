import math

import pytest
from hypothesis import given, settings

from superdom import oracles
from superdom.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from superdom.matching import SearchIncomplete, max_matching
from superdom.superdom import (
    NotSuperDominating,
    bounds,
    containing_vertex,
    exchange,
    extract_core,
    gamma_sp_closed_form,
    gamma_sp_exact,
    is_super_dominating,
    verify_super_dom,
)

from conftest import graphs


def test_verify_examples(p4):
    cert = verify_super_dom(p4, {1, 2})
    assert cert.witness == {0: 1, 3: 2}
    with pytest.raises(NotSuperDominating) as exc:
        verify_super_dom(p4, {0, 1})
    assert exc.value.vertex == 3
    assert verify_super_dom(p4, range(4)).a == frozenset()


def test_refusal_names_smallest_failing_vertex():
    # C4 with D = {0}: vertex 1 is dominated by 0, but 0 also has 3 outside
    with pytest.raises(NotSuperDominating) as exc:
        verify_super_dom(cycle_graph(4), {0})
    assert exc.value.vertex == 1
    assert exc.value.reason == "no super-dominator in D"


def test_core_and_exchange(p4):
    cert = verify_super_dom(p4, {1, 2})
    assert extract_core(p4, cert) == {1, 2}
    c4 = verify_super_dom(cycle_graph(4), {0, 1})
    assert extract_core(cycle_graph(4), c4) == {0, 1}
    ex = exchange(p4, cert)
    assert ex.d == {0, 3} and is_super_dominating(p4, ex.d)
    full = verify_super_dom(p4, range(4))
    assert exchange(p4, full).d == frozenset(range(4))


def test_exact_examples():
    for n in range(2, 13):
        assert gamma_sp_exact(path_graph(n)).value == math.ceil(n / 2)
    assert [gamma_sp_exact(cycle_graph(n)).value for n in (6, 8, 10)] == [4, 4, 6]
    assert gamma_sp_exact(complete_graph(4)).value == 3
    assert gamma_sp_exact(Graph.from_edges(1, [])).value == 1


def test_isolated_vertices_are_forced():
    g = Graph.from_edges(5, [(0, 1), (1, 2)])
    r = gamma_sp_exact(g)
    assert r.value == 2 + 2
    assert {3, 4} <= r.certificate.d


@given(graphs(max_n=8))
@settings(max_examples=200, deadline=None)
def test_exact_matches_subset_search(g):
    r = gamma_sp_exact(g)
    assert r.value == oracles.brute_gamma_sp(g)[0]
    assert r.value == g.n - oracles.labeling_optimum(g)
    verify_super_dom(g, r.certificate.d)
    r.certificate.check_matching(g)
    assert oracles.is_super_dominating_mask(g.n, [sum(1 << w for w in g.adj[v]) for v in range(g.n)],
                                            sum(1 << v for v in r.certificate.d))


@given(graphs(max_n=8))
@settings(max_examples=100, deadline=None)
def test_exchange_and_each_vertex(g):
    r = gamma_sp_exact(g)
    twice = exchange(g, exchange(g, r.certificate))
    assert twice.size == r.value and is_super_dominating(g, twice.d)
    for v in range(g.n):
        c = containing_vertex(g, r.certificate, v)
        assert v in c.d and c.size == r.value and is_super_dominating(g, c.d)


def test_unseeded_search_agrees():
    for g in (cycle_graph(10), complete_graph(5), star_graph(4)):
        assert gamma_sp_exact(g, seed=False).value == gamma_sp_exact(g).value


def test_budget_reports_bounds():
    g = Graph.from_edges(14, [(u, v) for u in range(14) for v in range(u + 1, 14) if (u * v + u + v) % 3 == 0])
    with pytest.raises(SearchIncomplete) as exc:
        gamma_sp_exact(g, budget=1, seed=False)
    assert exc.value.lower <= gamma_sp_exact(g).value <= exc.value.upper


def test_closed_forms():
    assert gamma_sp_closed_form("cycle", 6) == 4
    assert gamma_sp_closed_form("star", 5) == 5
    assert gamma_sp_closed_form("star-subdivision", 3, 2) == 6
    assert gamma_sp_closed_form("path", 7) == 4
    with pytest.raises(ValueError):
        gamma_sp_closed_form("cycle", 2)
    with pytest.raises(ValueError):
        gamma_sp_closed_form("wheel", 5)


def test_bounds_examples():
    r = bounds(path_graph(6), exact=True)
    assert (r.gamma_lower, r.gamma_upper, r.gamma) == (3, 4, 3)
    k5 = bounds(complete_graph(5))
    assert (k5.gamma_lower, k5.gamma_upper) == (3, 4)
    c4 = bounds(cycle_graph(4), exact=True)
    assert (c4.gamma_lower, c4.gamma) == (2, 2)


@given(graphs(max_n=8))
@settings(max_examples=150, deadline=None)
def test_bounds_sandwich(g):
    r = bounds(g, exact=True)
    assert r.holds()
    assert r.matching_number == len(max_matching(g))
