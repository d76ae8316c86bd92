import math

import pytest
from hypothesis import given, settings

from superdom import oracles
from superdom.graph import (
    Graph,
    GraphError,
    NoEvenCycle,
    block_decompose,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    find_even_cycle,
    format_graph,
    girth,
    is_bipartite,
    lex_product_k4,
    parse_graph,
    path_graph,
    spanning_structure,
    star_graph,
    subdivide,
)

from conftest import graphs


def test_parse_examples():
    k3 = parse_graph("3 3\n0 1\n1 2\n0 2")
    assert (k3.n, k3.m) == (3, 3)
    assert parse_graph("2 1\n0 1").edges == ((0, 1),)
    p4 = parse_graph("4 3\n0 1\n1 2\n2 3")
    assert [p4.degree(v) for v in range(4)] == [1, 2, 2, 1]


@pytest.mark.parametrize("text, line", [
    ("3 2\n0 1\n0 1", 3),      # duplicate
    ("3 1\n1 1", 2),           # loop
    ("3 1\n0 3", 2),           # out of range
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(GraphError, match=f"line {line}"):
        parse_graph(text)


def test_parse_count_mismatch():
    with pytest.raises(GraphError):
        parse_graph("3 3\n0 1\n1 2")


def test_format_round_trip():
    g = parse_graph("4 3\n2 3\n0 1\n1 2")
    assert format_graph(g) == "4 3\n0 1\n1 2\n2 3\n"
    assert parse_graph(format_graph(g)).edges == ((0, 1), (1, 2), (2, 3))


def test_subdivide_examples():
    sd = subdivide(complete_graph(3), 2)
    assert (sd.result.n, sd.result.m) == (9, 9)
    assert all(sd.result.degree(v) == 2 for v in range(9))
    assert subdivide(complete_graph(2), 3).result.n == 5
    spider = subdivide(star_graph(3), 1).result
    assert (spider.n, spider.m) == (7, 6)
    assert subdivide(cycle_graph(5), 0).result.edges == cycle_graph(5).edges


@given(graphs(max_n=7))
@settings(max_examples=60, deadline=None)
def test_subdivide_invariants(g):
    for k in range(4):
        sd = subdivide(g, k)
        assert sd.result.n == g.n + k * g.m
        assert sd.result.m == (k + 1) * g.m
        for (u, v) in g.edges:
            path = sd.super_edges[g.edge_id(u, v)]
            assert path[0] == u and path[-1] == v and len(path) == k + 2
            for s in range(1, k + 1):
                assert sd.result.degree(path[s]) == 2
                assert sd.position(u, v, s) == path[s] == sd.position(v, u, k + 1 - s)


def test_lex_product_examples():
    assert lex_product_k4(Graph.from_edges(1, []))[0].m == 6
    assert lex_product_k4(complete_graph(2))[0].m == 28
    g, roles = lex_product_k4(path_graph(3))
    assert (g.n, g.m) == (12, 50)
    assert roles[5] == (1, 2)


def test_blocks_and_oc():
    assert block_decompose(cycle_graph(4)).oc == 0
    assert block_decompose(cycle_graph(5)).oc == 1
    assert block_decompose(disjoint_union(complete_graph(3), complete_graph(3))).oc == 2
    assert block_decompose(Graph.from_edges(3, [])).oc == 3


@given(graphs(max_n=8))
@settings(max_examples=150, deadline=None)
def test_even_cycle_detection_matches_enumeration(g):
    expected = oracles.has_even_cycle(g)
    cyc = find_even_cycle(g)
    assert (cyc is not None) == expected
    if cyc:
        assert len(cyc) % 2 == 0 and len(set(cyc)) == len(cyc)
        assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    per_comp = [oracles.has_even_cycle(g.induced(c)[0]) for c in components(g)]
    assert block_decompose(g).oc == per_comp.count(False)


def test_girth():
    assert girth(cycle_graph(7)) == 7
    assert girth(path_graph(6)) == math.inf
    assert girth(complete_graph(4)) == 3


def test_spanning_structure_examples():
    h = spanning_structure(cycle_graph(4), True)
    assert len(h.edges) == 4 and h.coloring is not None
    assert all(h.coloring[u] != h.coloring[v] for u, v in cycle_graph(4).edges)
    assert len(spanning_structure(complete_graph(3), False).edges) == 2
    k4 = spanning_structure(complete_graph(4), True)
    assert len(k4.edges) == 4 and len(k4.cycle) == 4
    with pytest.raises(NoEvenCycle):
        spanning_structure(complete_graph(3), True)


@given(graphs(max_n=8))
@settings(max_examples=80, deadline=None)
def test_bipartite_matches_networkx(g):
    import networkx as nx
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    assert is_bipartite(g) == nx.is_bipartite(h)
