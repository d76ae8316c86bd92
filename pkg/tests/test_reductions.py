import itertools

import pytest

from superdom import oracles
from superdom.acceptance import FOUR_VAR_CNF, SAT_CNF, UNSAT_CNF, atlas
from superdom.graph import complete_graph, is_bipartite, lex_product_k4, path_graph
from superdom.matching import CertificateError, max_ii_matching, max_independent
from superdom.reductions import (
    CnfError,
    CnfFormula,
    assignment_to_superdom,
    audit_gf,
    build_gf,
    build_product,
    ii_to_independent,
    independent_to_ii,
    parse_dimacs_cnf,
    superdom_to_assignment,
)
from superdom.superdom import NotSuperDominating, certificate_from_labeling, gamma_sp_exact, verify_super_dom


def test_parse_examples():
    f = parse_dimacs_cnf("p cnf 1 1\n1 1 1 0")
    assert (f.num_vars, f.clauses) == (1, ((1, 1, 1),))
    four = parse_dimacs_cnf(FOUR_VAR_CNF)
    assert four.clauses == ((-1, 2, -3), (1, 3, -4), (-2, 3, 4))
    with pytest.raises(CnfError, match="2 literals"):
        parse_dimacs_cnf("p cnf 2 1\n1 -2 0")


@pytest.mark.parametrize("text", ["1 2 3 0", "p cnf 2 1\n1 2 5 0", "p cnf 2 2\n1 2 2 0", "p cnf 2 1\n1 2 2"])
def test_parse_rejects(text):
    with pytest.raises(CnfError):
        parse_dimacs_cnf(text)


def test_gadget_wiring():
    art = build_gf(parse_dimacs_cnf(SAT_CNF))
    g = art.graph
    v = {r: i for i, r in enumerate(art.roles)}
    path = ["x1^1", "x1^-", "x1^2", "x1^4", "x1^5", "x1^+", "x1^6"]
    for a, b in zip(path, path[1:]):
        assert g.has_edge(v[a], v[b])
    assert g.has_edge(v["x1^2"], v["x1^3"]) and g.degree(v["x1^3"]) == 1
    assert g.has_edge(v["v"], v["v*"]) and g.has_edge(v["v*"], v["c1"])
    assert (g.n, art.threshold) == (14, 8)
    assert art.role_sidecar().splitlines()[0] == "0 x1^-"


def test_audit_examples():
    art = build_gf(parse_dimacs_cnf(FOUR_VAR_CNF))
    au = audit_gf(art)
    assert (au.n, art.threshold, au.matching_number) == (46, 26, 20)
    assert au.bipartite and au.forced_edges_present
    small = audit_gf(build_gf(parse_dimacs_cnf(SAT_CNF)))
    assert (small.n, small.matching_number) == (14, 6)


def _formulas(s, ell):
    lits = [l for i in range(1, s + 1) for l in (i, -i)]
    clauses = list(itertools.combinations_with_replacement(lits, 3))
    for combo in itertools.combinations_with_replacement(clauses, ell):
        yield CnfFormula(s, tuple(combo))


def _satisfiable(f):
    return any(f.satisfied_by(dict(zip(range(1, f.num_vars + 1), bits)))
               for bits in itertools.product([False, True], repeat=f.num_vars))


def test_small_formulas_decide_satisfiability():
    checked = 0
    for s, ell in ((1, 1), (1, 2), (2, 1), (2, 2)):
        for f in _formulas(s, ell):
            art = build_gf(f)
            assert is_bipartite(art.graph) and audit_gf(art).ok
            r = gamma_sp_exact(art.graph)
            assert (r.value == art.threshold) == _satisfiable(f)
            assert r.value >= art.threshold
            if r.value == art.threshold:
                phi = superdom_to_assignment(art, r.certificate)
                assert f.satisfied_by(phi)
            checked += 1
    assert checked == 4 + 10 + 20 + 210


def test_assignment_translation():
    art = build_gf(parse_dimacs_cnf(FOUR_VAR_CNF))
    d = assignment_to_superdom(art, {i: True for i in range(1, 5)})
    cert = verify_super_dom(art.graph, d)
    assert cert.size == 26
    assert superdom_to_assignment(art, cert) == {1: True, 2: True, 3: True, 4: True}

    art = build_gf(parse_dimacs_cnf(SAT_CNF))
    assert len(assignment_to_superdom(art, {1: False})) == 8
    with pytest.raises(NotSuperDominating) as exc:
        verify_super_dom(art.graph, assignment_to_superdom(art, {1: False}))
    assert art.roles[exc.value.vertex] == "c1"


def test_every_assignment_has_threshold_size():
    art = build_gf(parse_dimacs_cnf(FOUR_VAR_CNF))
    for bits in itertools.product([False, True], repeat=4):
        phi = dict(zip(range(1, 5), bits))
        d = assignment_to_superdom(art, phi)
        assert len(d) == art.threshold
        ok = True
        try:
            verify_super_dom(art.graph, d)
        except NotSuperDominating:
            ok = False
        assert ok == art.formula.satisfied_by(phi)


def test_back_translation_uses_exchange():
    art = build_gf(parse_dimacs_cnf(SAT_CNF))
    cert = verify_super_dom(art.graph, assignment_to_superdom(art, {1: True}))
    swapped = certificate_from_labeling(art.graph, cert.b, cert.a)
    assert art.vertex("v*") in swapped.b
    assert superdom_to_assignment(art, swapped) == {1: True}


def test_back_translation_refuses_large_certificate():
    art = build_gf(parse_dimacs_cnf(SAT_CNF))
    big = verify_super_dom(art.graph, set(range(art.graph.n)) - {0})
    assert big.size == art.threshold + 5
    with pytest.raises(CertificateError, match="no conclusion"):
        superdom_to_assignment(art, big)


def test_unsat_instance_is_above_threshold():
    art = build_gf(parse_dimacs_cnf(UNSAT_CNF))
    value = gamma_sp_exact(art.graph).value
    assert value > art.threshold
    assert value == oracles.brute_gamma_sp(art.graph)[0]


def test_product_examples():
    c = independent_to_ii(path_graph(3), [0, 2])
    assert c.size == 4
    assert independent_to_ii(complete_graph(3), [1]).size == 2
    with pytest.raises(CertificateError):
        independent_to_ii(path_graph(3), [0, 1])
    art = build_product(path_graph(3))
    assert art.roles[:4] == ("(0,1)", "(0,2)", "(0,3)", "(0,4)")


def test_product_round_trip_exhaustive():
    for f in atlas(5):
        g, _ = lex_product_k4(f)
        alpha = oracles.independence_number(f)
        forward = independent_to_ii(f, max_independent(f))
        assert forward.size == 2 * alpha
        back = ii_to_independent(f, forward)
        assert len(back) == alpha
        best = max_ii_matching(g)
        assert best.size == 2 * alpha
        assert len(ii_to_independent(f, best)) == alpha


def test_cross_edges_are_normalized():
    from superdom.matching import IIMatchingCertificate
    f = path_graph(2)
    g, _ = lex_product_k4(f)
    cross = IIMatchingCertificate(frozenset({g.edge_id(0, 4)}), frozenset())
    assert ii_to_independent(f, cross) in ([0], [1])
