"""Two hardness constructions as instance generators, with certificate
translation in both directions.

* 3-SAT -> super domination: the bipartite gadget graph G_F, where F is
  satisfiable iff gamma_sp(G_F) <= 4s + 3l + 1.
* independent set -> II-matching: the product F o K4, where
  ii(F o K4) = 2 alpha(F).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, girth, is_bipartite, is_forest, lex_product_k4
from .matching import CertificateError, IIMatchingCertificate, max_matching
from .superdom import SuperDomCertificate, exchange, verify_super_dom


class CnfError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)

    def first_unsatisfied(self, assignment: dict[int, bool]) -> int | None:
        for j, c in enumerate(self.clauses):
            if not any(assignment[abs(l)] == (l > 0) for l in c):
                return j
        return None

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """DIMACS CNF with exactly three literals per clause."""
    header = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"line {lineno}: bad problem line")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfError(f"line {lineno}: bad problem line") from None
            continue
        if header is None:
            raise CnfError(f"line {lineno}: clause before 'p cnf' header")
        try:
            tokens.extend(int(x) for x in line.split())
        except ValueError:
            raise CnfError(f"line {lineno}: non-integer literal") from None
    if header is None:
        raise CnfError("missing 'p cnf' header")
    s, ell = header
    clauses = []
    cur: list[int] = []
    for lit in tokens:
        if lit == 0:
            if len(cur) != 3:
                raise CnfError(f"clause {len(clauses) + 1} has {len(cur)} literals; 3-SAT needs exactly 3")
            clauses.append(tuple(cur))
            cur = []
            continue
        if not 1 <= abs(lit) <= s:
            raise CnfError(f"literal {lit} outside variables 1..{s}")
        cur.append(lit)
    if cur:
        raise CnfError("last clause is not terminated by 0")
    if len(clauses) != ell:
        raise CnfError(f"header announces {ell} clauses, found {len(clauses)}")
    return CnfFormula(s, tuple(clauses))


# -- G_F ----------------------------------------------------------------------

GADGET = ("x-", "x+", "x1", "x2", "x3", "x4", "x5", "x6")


@dataclass(frozen=True)
class ReductionArtifact:
    graph: Graph
    roles: tuple[str, ...]
    threshold: int
    formula: CnfFormula | None = None
    source: Graph | None = None

    def vertex(self, role: str) -> int:
        return self.roles.index(role)

    def role_sidecar(self) -> str:
        return "".join(f"{v} {r}\n" for v, r in enumerate(self.roles))


def _var_vertex(i: int, part: str) -> int:
    return 8 * (i - 1) + GADGET.index(part)


def build_gf(f: CnfFormula) -> ReductionArtifact:
    """Gadget graph for a 3-CNF formula.

    Per variable: the path x1 - x- - x2 - x4 - x5 - x+ - x6 with x3 pendant
    at x2. Per clause c_j: one subdivision vertex y per literal occurrence,
    joined to x+ (positive) or x- (negative) and to c_j. Finally v - v* and
    v* - c_j for every clause.
    """
    s, ell = f.num_vars, len(f.clauses)
    roles = []
    for i in range(1, s + 1):
        roles += [f"x{i}^{p[1:]}" for p in GADGET]
    edges = []
    for i in range(1, s + 1):
        x = lambda p: _var_vertex(i, p)  # noqa: E731
        chain = ["x1", "x-", "x2", "x4", "x5", "x+", "x6"]
        edges += [(x(a), x(b)) for a, b in zip(chain, chain[1:])]
        edges.append((x("x2"), x("x3")))
    clause0 = 8 * s
    roles += [f"c{j}" for j in range(1, ell + 1)]
    nxt = clause0 + ell
    for j, clause in enumerate(f.clauses, start=1):
        for p, lit in enumerate(clause, start=1):
            y = nxt
            nxt += 1
            roles.append(f"y{j},{abs(lit)}#{p}")
            edges.append((y, clause0 + j - 1))
            edges.append((y, _var_vertex(abs(lit), "x+" if lit > 0 else "x-")))
    v, vstar = nxt, nxt + 1
    roles += ["v", "v*"]
    edges.append((v, vstar))
    edges += [(vstar, clause0 + j) for j in range(ell)]
    g = Graph.from_edges(nxt + 2, edges)
    return ReductionArtifact(g, tuple(roles), 4 * s + 3 * ell + 1, formula=f)


@dataclass(frozen=True)
class GfAudit:
    n: int
    expected_n: int
    bipartite: bool
    girth: float
    is_tree: bool
    matching_number: int
    expected_matching_number: int
    forced_edges_present: bool
    per_gadget_matching_edges: tuple[int, ...]

    @property
    def girth_ok(self) -> bool:
        return self.is_tree or self.girth >= 8

    @property
    def ok(self) -> bool:
        return (self.n == self.expected_n and self.bipartite
                and self.matching_number == self.expected_matching_number
                and self.forced_edges_present and max(self.per_gadget_matching_edges, default=0) <= 4)


def audit_gf(art: ReductionArtifact) -> GfAudit:
    """Structural checks on a generated G_F (girth reported, not enforced)."""
    f = art.formula
    g = art.graph
    s, ell = f.num_vars, len(f.clauses)
    mm = max_matching(g)
    forced = [(art.vertex("v"), art.vertex("v*"))]
    for i in range(1, s + 1):
        forced += [(_var_vertex(i, "x2"), _var_vertex(i, "x3")), (_var_vertex(i, "x4"), _var_vertex(i, "x5"))]
    present = all(g.edge_id(a, b) in mm.edges for a, b in forced)
    per_gadget = []
    for i in range(1, s + 1):
        block = set(range(8 * (i - 1), 8 * i))
        per_gadget.append(sum(1 for e in mm.edges if set(g.edges[e]) & block))
    return GfAudit(g.n, 8 * s + 4 * ell + 2, is_bipartite(g), girth(g), is_forest(g),
                   len(mm), 4 * s + ell + 1, present, tuple(per_gadget))


def assignment_to_superdom(art: ReductionArtifact, phi: dict[int, bool]) -> frozenset[int]:
    """D = Y + {v} + {x1, x3, x5, x+ : true} + {x-, x2, x4, x6 : false}."""
    f = art.formula
    d = {art.vertex("v")}
    d.update(v for v, r in enumerate(art.roles) if r.startswith("y"))
    for i in range(1, f.num_vars + 1):
        parts = ("x1", "x3", "x5", "x+") if phi[i] else ("x-", "x2", "x4", "x6")
        d.update(_var_vertex(i, p) for p in parts)
    return frozenset(d)


def superdom_to_assignment(art: ReductionArtifact, cert: SuperDomCertificate) -> dict[int, bool]:
    """Truth assignment read off a super dominating set of size at most the
    threshold: exchange so that v* is outside D, then x_i is true iff x_i^+
    lies in the core."""
    g = art.graph
    if cert.size > art.threshold:
        raise CertificateError(f"certificate of size {cert.size} exceeds threshold {art.threshold}: no conclusion")
    cert.check_matching(g)
    vstar = art.vertex("v*")
    if vstar not in cert.a:
        if vstar not in cert.b:
            raise CertificateError("v* is neither outside D nor in the core")
        cert = exchange(g, cert)
    f = art.formula
    phi = {}
    for i in range(1, f.num_vars + 1):
        plus, minus = _var_vertex(i, "x+"), _var_vertex(i, "x-")
        if plus in cert.b:
            phi[i] = True
        elif minus in cert.b:
            phi[i] = False
        else:
            raise CertificateError(f"neither x{i}+ nor x{i}- lies in the core")
    j = f.first_unsatisfied(phi)
    if j is not None:
        raise CertificateError(f"extracted assignment leaves clause c{j + 1} unsatisfied")
    return phi


def check_assignment(art: ReductionArtifact, phi: dict[int, bool]) -> SuperDomCertificate:
    """Verify the translated set; a refusal names the blocking vertex."""
    return verify_super_dom(art.graph, assignment_to_superdom(art, phi))


# -- F o K4 -------------------------------------------------------------------

def build_product(f: Graph) -> ReductionArtifact:
    g, roles = lex_product_k4(f)
    return ReductionArtifact(g, tuple(f"({x},{i})" for x, i in roles), 0, source=f)


def _is_independent(f: Graph, s) -> bool:
    return all(not f.has_edge(u, v) for u in s for v in s if u < v)


def independent_to_ii(f: Graph, s) -> IIMatchingCertificate:
    """M1 = {(x,1)(x,2)}, M2 = {(x,3)(x,4)} over x in S."""
    s = sorted(set(s))
    if not _is_independent(f, s):
        raise CertificateError("set is not independent")
    g, _ = lex_product_k4(f)
    m1 = frozenset(g.edge_id(4 * x, 4 * x + 1) for x in s)
    m2 = frozenset(g.edge_id(4 * x + 2, 4 * x + 3) for x in s)
    cert = IIMatchingCertificate(m1, m2)
    cert.validate(g)
    return cert


def normalize_cross_edges(f: Graph, cert: IIMatchingCertificate) -> IIMatchingCertificate:
    """Replace every edge between two fibres by an edge inside the fibre of
    one endpoint, keeping both parts induced."""
    g, _ = lex_product_k4(f)
    cert.validate(g)
    parts = [set(cert.m1), set(cert.m2)]
    for p in (0, 1):
        for e in sorted(parts[p]):
            a, b = g.edges[e]
            if a // 4 == b // 4:
                continue
            covered = set()
            for q in (0, 1):
                for e2 in parts[q]:
                    covered.update(g.edges[e2])
            fibre = range(4 * (a // 4), 4 * (a // 4) + 4)
            free = [w for w in fibre if w not in covered]
            if not free:
                raise CertificateError(f"no free vertex in the fibre of {a}")
            parts[p].remove(e)
            parts[p].add(g.edge_id(a, free[0]))
    out = IIMatchingCertificate(frozenset(parts[0]), frozenset(parts[1]))
    out.validate(g)
    return out


def ii_to_independent(f: Graph, cert: IIMatchingCertificate) -> list[int]:
    """Independent set of F with 2|S| >= |m1| + |m2|."""
    g, _ = lex_product_k4(f)
    norm = normalize_cross_edges(f, cert)
    best: list[int] = []
    for part in (norm.m1, norm.m2):
        fibres = sorted({g.edges[e][0] // 4 for e in part})
        if len(fibres) != len(part):
            raise CertificateError("two edges of one induced matching in the same fibre")
        if len(fibres) > len(best):
            best = fibres
    if not _is_independent(f, best):
        raise CertificateError("fibres used by an induced matching are adjacent")
    assert 2 * len(best) >= cert.size
    return best
