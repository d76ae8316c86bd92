"""Acceptance suites. Each suite records one line per instance so that two
runs can be compared byte for byte; timings are kept apart from those lines.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import networkx as nx

from . import oracles
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    is_bipartite,
    lex_product_k4,
    paw_graph,
    path_graph,
    star_graph,
    subdivide,
)
from .matching import CertificateError, SearchIncomplete, max_ii_matching, max_independent, max_matching
from .reductions import (
    assignment_to_superdom,
    audit_gf,
    build_gf,
    ii_to_independent,
    independent_to_ii,
    parse_dimacs_cnf,
    superdom_to_assignment,
)
from .subdivision import build_superdom_set_subdivision, gamma_sp_subdivision_value
from .superdom import (
    NotSuperDominating,
    bounds,
    containing_vertex,
    exchange,
    gamma_sp_closed_form,
    gamma_sp_exact,
    verify_super_dom,
)
from .tree import tree_gamma_sp_set

FOUR_VAR_CNF = "p cnf 4 3\n-1 2 -3 0\n1 3 -4 0\n-2 3 4 0\n"
SAT_CNF = "p cnf 1 1\n1 1 1 0\n"
UNSAT_CNF = "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n"

II_BUDGET = 20_000_000


@dataclass
class SuiteResult:
    number: int
    name: str
    limit: float
    lines: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    checks: int = 0

    def check(self, ok: bool, line: str) -> None:
        self.checks += 1
        self.lines.append(("ok   " if ok else "FAIL ") + line)
        if not ok:
            self.failures.append(line)

    @property
    def passed(self) -> bool:
        return not self.failures and self.elapsed < self.limit

    def summary(self, canonical: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        label = f"criterion {self.number}" if self.number else "extra"
        text = f"{label} [{self.name}]: {status} ({self.checks} checks, {len(self.failures)} failed)"
        if not canonical:
            text += f" in {self.elapsed:.2f}s"
            if self.limit != float("inf"):
                text += f" (limit {self.limit:g}s)"
        return text

    def transcript(self) -> str:
        return "\n".join([f"# suite {self.number} {self.name}"] + self.lines) + "\n"


def _from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(mapping), [(mapping[u], mapping[v]) for u, v in h.edges()])


def atlas(max_n: int) -> list[Graph]:
    return [_from_nx(h) for h in nx.graph_atlas_g()[1:] if h.number_of_nodes() <= max_n]


def _edges_str(g: Graph) -> str:
    return f"n={g.n} E={';'.join(f'{u}-{v}' for u, v in g.edges)}"


# -- suites -------------------------------------------------------------------

def closed_forms(res: SuiteResult) -> None:
    for n in range(2, 17):
        v = gamma_sp_exact(path_graph(n)).value
        res.check(v == gamma_sp_closed_form("path", n), f"P{n} exact={v} formula={gamma_sp_closed_form('path', n)}")
    for n in range(3, 17):
        v = gamma_sp_exact(cycle_graph(n)).value
        res.check(v == gamma_sp_closed_form("cycle", n), f"C{n} exact={v} formula={gamma_sp_closed_form('cycle', n)}")
    for n in range(2, 9):
        v = gamma_sp_exact(star_graph(n)).value
        res.check(v == n, f"K1,{n} exact={v} formula={n}")


def _tree_line(res: SuiteResult, label: str, t: Graph) -> None:
    tv, cert = tree_gamma_sp_set(t)
    ev = gamma_sp_exact(t).value
    bound = t.n - len(max_matching(t))
    try:
        verify_super_dom(t, cert.d)
        ok = True
    except NotSuperDominating:
        ok = False
    res.check(ok and tv == ev == bound and cert.size == tv,
              f"{label} tree={tv} exact={ev} n-matching={bound} set_verifies={ok}")


def trees(res: SuiteResult) -> None:
    _tree_line(res, "n=1 #0", Graph.from_edges(1, []))
    for n in range(2, 11):
        for i, h in enumerate(nx.nonisomorphic_trees(n)):
            _tree_line(res, f"n={n} #{i}", _from_nx(h))
    rng = random.Random(20240531)
    for i in range(200):
        n = rng.randint(2, 14)
        seq = [rng.randrange(n) for _ in range(n - 2)]
        t = _from_nx(nx.from_prufer_sequence(seq)) if n > 2 else path_graph(2)
        _tree_line(res, f"random #{i} n={n} prufer={seq}", t)


SUBDIVISION_BASES: list[tuple[str, Callable[[], Graph]]] = [
    ("K2", lambda: complete_graph(2)),
    ("P3", lambda: path_graph(3)),
    ("P4", lambda: path_graph(4)),
    ("K3", lambda: complete_graph(3)),
    ("K4", lambda: complete_graph(4)),
    ("C4", lambda: cycle_graph(4)),
    ("C5", lambda: cycle_graph(5)),
    ("paw", paw_graph),
    ("K1,3", lambda: star_graph(3)),
]


def subdivisions(res: SuiteResult) -> None:
    for name, make in SUBDIVISION_BASES:
        g = make()
        for k in range(1, 5):
            size = g.n + k * g.m
            if size > 26:
                res.lines.append(f"skip {name} k={k} n(S_k)={size} > 26")
                continue
            formula = gamma_sp_subdivision_value(g, k)
            sd = subdivide(g, k)
            exact = gamma_sp_exact(sd.result).value
            try:
                _, cert, _ = build_superdom_set_subdivision(g, k)
                built, verified = cert.size, True
                verify_super_dom(sd.result, cert.d)
            except (CertificateError, NotSuperDominating) as exc:
                built, verified = str(exc), False
            res.check(formula.value == exact and verified and built == exact,
                      f"{name} k={k} n(S_k)={size} formula={formula.value} exact={exact} built={built} "
                      f"[{formula.provenance}]")
    for k, cyc in ((3, 12), (1, 6), (4, 15), (2, 9)):
        via_sub = gamma_sp_exact(subdivide(complete_graph(3), k).result).value
        via_cycle = gamma_sp_exact(cycle_graph(cyc)).value
        formula = gamma_sp_subdivision_value(complete_graph(3), k).value
        expected = {3: 6, 1: 4, 4: 8, 2: 5}[k]
        res.check(via_sub == via_cycle == formula == expected,
                  f"S_{k}(K3)={via_sub} C{cyc}={via_cycle} formula={formula} expected={expected}")


def star_subdivisions(res: SuiteResult) -> None:
    for n in range(2, 6):
        for k in range(0, 7):
            t = subdivide(star_graph(n), k).result
            tv, _ = tree_gamma_sp_set(t)
            cf = gamma_sp_closed_form("star-subdivision", n, k)
            res.check(tv == cf, f"S_{k}(K1,{n}) tree={tv} closed_form={cf}")


def products(res: SuiteResult) -> None:
    for idx, f in enumerate(atlas(5)):
        g, _ = lex_product_k4(f)
        alpha = oracles.independence_number(f)
        try:
            cert = max_ii_matching(g, budget=II_BUDGET)
        except SearchIncomplete:
            res.check(False, f"f#{idx} {_edges_str(f)} ii search exceeded budget")
            continue
        valid = True
        try:
            cert.validate(g)
        except CertificateError:
            valid = False
        oracle = oracles.ii_number(g) if g.n <= 20 else None
        fwd = independent_to_ii(f, max_independent(f))
        back = ii_to_independent(f, cert)
        ok = (cert.size == 2 * alpha and valid and (oracle is None or oracle == cert.size)
              and fwd.size == 2 * alpha and len(back) == alpha)
        res.check(ok, f"f#{idx} {_edges_str(f)} ii={cert.size} oracle={oracle} 2alpha={2 * alpha} "
                      f"cert_valid={valid} forward={fwd.size} back={len(back)}")


def sat_reduction(res: SuiteResult) -> None:
    art = build_gf(parse_dimacs_cnf(SAT_CNF))
    r = gamma_sp_exact(art.graph)
    phi = superdom_to_assignment(art, r.certificate)
    res.check(r.value == 8 == art.threshold and phi == {1: True},
              f"(x1|x1|x1): gamma_sp={r.value} threshold={art.threshold} expected=8 assignment={phi}")

    art = build_gf(parse_dimacs_cnf(UNSAT_CNF))
    r = gamma_sp_exact(art.graph)
    res.check(r.value > art.threshold,
              f"(x1|x1|x1)&(-x1|-x1|-x1): gamma_sp={r.value} > threshold={art.threshold}")
    res.check(r.value > 12, f"(x1|x1|x1)&(-x1|-x1|-x1): gamma_sp={r.value} > 12")

    art = build_gf(parse_dimacs_cnf(FOUR_VAR_CNF))
    au = audit_gf(art)
    res.check(au.n == 46, f"4-var n={au.n} expected=46")
    res.check(au.bipartite, f"4-var bipartite={au.bipartite}")
    res.check(au.girth >= 8, f"4-var girth={au.girth} >= 8")
    res.check(au.matching_number == 20, f"4-var matching_number={au.matching_number} expected=20")
    res.check(au.forced_edges_present and max(au.per_gadget_matching_edges) <= 4,
              f"4-var forced matching edges present={au.forced_edges_present} "
              f"per_gadget={list(au.per_gadget_matching_edges)}")
    d = assignment_to_superdom(art, {i: True for i in range(1, 5)})
    try:
        verify_super_dom(art.graph, d)
        ok = True
    except NotSuperDominating:
        ok = False
    res.check(ok and len(d) == 26 == art.threshold, f"4-var all-true set size={len(d)} verifies={ok}")


def characterization(res: SuiteResult) -> None:
    for idx, g in enumerate(atlas(7)):
        brute, _ = oracles.brute_gamma_sp(g)
        labeled = g.n - oracles.labeling_optimum(g)
        r = gamma_sp_exact(g)
        rep = bounds(g, exact=True)
        mm = oracles.matching_number(g)
        rho = oracles.packing_number(g.induced(v for v in range(g.n) if g.adj[v])[0])
        bip = is_bipartite(g)
        alpha_ok = True
        if bip:
            alpha_ok = oracles.independence_number(g) <= brute and rep.independence_number == oracles.independence_number(g)
        ex = exchange(g, r.certificate)
        exchange_ok = ex.size == r.value and _verifies(g, ex.d)
        back = exchange(g, ex)
        exchange_ok = exchange_ok and back.size == r.value and _verifies(g, back.d)
        each_ok = True
        for v in range(g.n):
            c = containing_vertex(g, r.certificate, v)
            each_ok = each_ok and v in c.d and c.size == brute and _verifies(g, c.d)
        ok = (brute == labeled == r.value and rep.holds() and rep.matching_number == mm
              and rep.packing_number == rho and alpha_ok and exchange_ok and each_ok)
        res.check(ok, f"G#{idx} {_edges_str(g)} subset={brute} labeling={labeled} exact={r.value} "
                      f"bounds=[{rep.gamma_lower},{rep.gamma_upper}] alpha_ok={alpha_ok} "
                      f"exchange_ok={exchange_ok} each_vertex_ok={each_ok}")


def _verifies(g: Graph, d) -> bool:
    try:
        verify_super_dom(g, d)
    except NotSuperDominating:
        return False
    return True


def cycle_matrix(res: SuiteResult) -> None:
    for n in range(3, 41):
        exact = gamma_sp_exact(cycle_graph(n)).value
        cf = gamma_sp_closed_form("cycle", n)
        via = []
        for base in range(3, n):
            if n % base == 0:
                via.append(gamma_sp_subdivision_value(cycle_graph(base), n // base - 1).value)
        res.check(exact == cf and all(v == cf for v in via), f"C{n} exact={exact} closed_form={cf} via_subdivision={via}")


SUITES: list[tuple[int, str, float, Callable[[SuiteResult], None]]] = [
    (1, "closed forms", 1.0, closed_forms),
    (2, "trees", 30.0, trees),
    (3, "subdivision formulas", 600.0, subdivisions),
    (4, "star subdivisions", 1.0, star_subdivisions),
    (5, "ii of products with K4", 300.0, products),
    (6, "SAT reduction", 300.0, sat_reduction),
    (7, "characterization and corollaries", 600.0, characterization),
]

EXTRA_SUITES: list[tuple[int, str, float, Callable[[SuiteResult], None]]] = [
    (0, "cycle matrix n<=40", 60.0, cycle_matrix),
]


def run_suite(number: int) -> SuiteResult:
    for num, name, limit, fn in SUITES + EXTRA_SUITES:
        if num == number:
            res = SuiteResult(num, name, limit)
            start = time.perf_counter()
            try:
                fn(res)
            except Exception as exc:  # a crash is a failed criterion, not a crashed report
                res.check(False, f"suite raised {type(exc).__name__}: {exc}")
            res.elapsed = time.perf_counter() - start
            return res
    raise KeyError(number)


def determinism(first: list[SuiteResult]) -> SuiteResult:
    """Criterion 8: rerun every suite and compare canonical transcripts."""
    res = SuiteResult(8, "determinism", float("inf"))
    start = time.perf_counter()
    for old in first:
        new = run_suite(old.number)
        same = new.transcript() == old.transcript() and new.summary(True) == old.summary(True)
        res.check(same, f"suite {old.number} transcript identical on rerun")
    res.elapsed = time.perf_counter() - start
    return res


def run_all(include_extra: bool = True) -> list[SuiteResult]:
    numbers = [s[0] for s in (EXTRA_SUITES if include_extra else [])] + [s[0] for s in SUITES]
    results = [run_suite(n) for n in numbers]
    results.append(determinism(results))
    return results
