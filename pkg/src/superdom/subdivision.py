"""gamma_sp of k-subdivisions: closed formulas by k mod 4 and explicit
super dominating sets built super edge by super edge.

Positions on a super edge P_uv are counted from the endpoint named first;
``(uv)_s`` is position ``s`` in ``1..k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    Graph,
    SubdivisionMap,
    block_decompose,
    components,
    find_even_cycle,
    is_forest,
    spanning_tree,
    subdivide,
    unicyclic_spanning,
)
from .matching import CertificateError, IIMatchingCertificate, dr_function, max_ii_matching
from .superdom import (
    NotSuperDominating,
    SuperDomCertificate,
    gamma_sp_exact,
    verify_super_dom,
)


def _positions(k: int, residues: set[int], lo: int, hi: int) -> set[int]:
    return {s for s in range(lo, min(hi, k) + 1) if s % 4 in residues}


# placement patterns, named by residue class and role
def pattern(name: str, k: int) -> frozenset[int]:
    """Positions put into D on one super edge for a named placement rule."""
    t = k // 4
    if name == "k3.image":        # 1,2,5,6,...,4t+1,4t+2
        return frozenset(_positions(k, {1, 2}, 1, 4 * t + 2))
    if name == "k3.free":         # 2,3,6,7,...,4t+2,4t+3
        return frozenset(_positions(k, {2, 3}, 2, 4 * t + 3))
    if name == "k1.image_a":      # 1,2,5,6,...,4t-3,4t-2 and 4t+1
        return frozenset(_positions(k, {1, 2}, 1, 4 * t - 2) | {4 * t + 1})
    if name == "k1.image_b":      # 3,4,7,8,...,4t-1,4t
        return frozenset(_positions(k, {3, 0}, 3, 4 * t))
    if name == "k1.free_a":       # 2,3,6,7,...,4t-2,4t-1 and 4t+1
        return frozenset(_positions(k, {2, 3}, 2, 4 * t - 1) | {4 * t + 1})
    if name == "k1.free_b":       # 1 and 4,5,8,9,...,4t,4t+1
        return frozenset({1} | _positions(k, {0, 1}, 4, 4 * t + 1))
    if name == "k0.matched":      # 1,2,5,6,...,4t-3,4t-2
        return frozenset(_positions(k, {1, 2}, 1, 4 * t - 2))
    if name == "k0.from_a":       # 2,3,6,7,...,4t-2,4t-1
        return frozenset(_positions(k, {2, 3}, 2, 4 * t - 1))
    if name == "k0.other":        # 1, 4,5,...,4t-4,4t-3, 4t
        return frozenset({1, 4 * t} | _positions(k, {0, 1}, 4, 4 * t - 3))
    if name == "k2.m1":           # 1,2,5,6,...,4t+1,4t+2
        return frozenset(_positions(k, {1, 2}, 1, 4 * t + 2))
    if name == "k2.m2":           # 3,4,7,8,...,4t-1,4t
        return frozenset(_positions(k, {3, 0}, 3, 4 * t))
    if name == "k2.from_m1":      # 2,3,6,7,...,4t-2,4t-1 and 4t+2
        return frozenset(_positions(k, {2, 3}, 2, 4 * t - 1) | {4 * t + 2})
    if name == "k2.rest":         # 1, 4,5,...,4t,4t+1
        return frozenset({1} | _positions(k, {0, 1}, 4, 4 * t + 1))
    raise ValueError(f"unknown pattern {name!r}")


@dataclass
class SubdivisionPlan:
    """Ingredients and per-edge placements for one construction."""

    k: int
    residue: int
    base_vertices_in_d: set[int] = field(default_factory=set)
    # base edge id -> (pattern name, endpoint the positions are counted from)
    placements: dict[int, tuple[str, int]] = field(default_factory=dict)
    ingredients: dict = field(default_factory=dict)

    def expected_size(self) -> int:
        return len(self.base_vertices_in_d) + sum(
            len(pattern(name, self.k)) for name, _ in self.placements.values())


@dataclass(frozen=True)
class SubdivisionValue:
    value: int
    provenance: str
    base_invariant: dict


def even_cycle_free_count(g: Graph) -> int:
    """oc(G): components without an even cycle (isolated vertices count)."""
    return block_decompose(g).oc


def tree_component_count(g: Graph) -> int:
    return sum(1 for comp in components(g) if is_forest(g.induced(comp)[0]))


def gamma_sp_subdivision_value(g: Graph, k: int, budget: int | None = None) -> SubdivisionValue:
    """gamma_sp(S_k(G)) from the residue-class formulas (k = 0 searches G)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    m = g.m
    r = k % 4
    if k == 0:
        v = gamma_sp_exact(g, budget=budget).value
        return SubdivisionValue(v, "search on G (k = 0)", {"gamma_sp": v})
    if r == 3:
        trees = tree_component_count(g)
        return SubdivisionValue((k + 1) // 2 * m + trees, "k≡3 (mod 4): (k+1)/2·m + #tree components",
                                {"tree_components": trees})
    if r == 1:
        oc = even_cycle_free_count(g)
        return SubdivisionValue((k + 1) // 2 * m + oc, "k≡1 (mod 4): (k+1)/2·m + oc",
                                {"oc": oc})
    if r == 0:
        gsp = gamma_sp_exact(g, budget=budget).value
        return SubdivisionValue(k // 2 * m + gsp, "k≡0 (mod 4): k/2·m + gamma_sp(G)",
                                {"gamma_sp": gsp})
    ii = max_ii_matching(g, budget=budget).size
    return SubdivisionValue(k // 2 * m + g.n - ii, "k≡2 (mod 4): k/2·m + n - ii(G)",
                            {"ii": ii})


# -- plans --------------------------------------------------------------------

def _plan_k3(g: Graph, k: int) -> SubdivisionPlan:
    plan = SubdivisionPlan(k, 3)
    phi = dr_function(g)
    plan.ingredients["dr"] = phi
    image = {}
    for v, e in phi.assignment.items():
        image[e] = v
    for eid, (u, v) in enumerate(g.edges):
        if eid in image:
            plan.placements[eid] = ("k3.image", image[eid])
        else:
            plan.placements[eid] = ("k3.free", u)
    for comp in components(g):
        if not any(v in phi.assignment for v in comp):
            plan.base_vertices_in_d.update(comp)  # isolated vertex
        elif len([v for v in comp if v not in phi.assignment]) == 1:
            plan.base_vertices_in_d.update(v for v in comp if v not in phi.assignment)
    return plan


def _plan_k1(g: Graph, k: int) -> SubdivisionPlan:
    plan = SubdivisionPlan(k, 1)
    a_h: set[int] = set()
    b_h: set[int] = set()
    assignment: dict[int, int] = {}
    for comp in components(g):
        if len(comp) == 1:
            plan.base_vertices_in_d.add(comp[0])
            continue
        sub, old = g.induced(comp)
        cyc = find_even_cycle(sub)
        if cyc is not None:
            h = unicyclic_spanning(sub, cyc)
        else:
            h = spanning_tree(sub, sub.n - 1)
        phi = dr_function(sub, root=sub.n - 1, edge_ids=set(h.edges))
        for x, e in phi.assignment.items():
            assignment[old[x]] = g.edge_id(*(old[y] for y in sub.edges[e]))
            (a_h if h.coloring[x] == 0 else b_h).add(old[x])
    plan.ingredients.update(a_h=a_h, b_h=b_h, dr=assignment)
    for v in range(g.n):
        if v not in a_h:
            plan.base_vertices_in_d.add(v)
    image = {e: v for v, e in assignment.items()}
    for eid, (u, v) in enumerate(g.edges):
        if eid in image:
            rep = image[eid]
            plan.placements[eid] = ("k1.image_a" if rep in a_h else "k1.image_b", rep)
        else:
            # u < v, and u is never the unrepresented root (largest id)
            plan.placements[eid] = ("k1.free_a" if u in a_h else "k1.free_b", u)
    return plan


def _plan_k0(g: Graph, k: int, base_cert: SuperDomCertificate) -> SubdivisionPlan:
    plan = SubdivisionPlan(k, 0)
    a = base_cert.a
    plan.ingredients.update(cert=base_cert)
    plan.base_vertices_in_d = set(base_cert.d)
    for eid, (u, v) in enumerate(g.edges):
        if base_cert.witness.get(u) == v:
            plan.placements[eid] = ("k0.matched", u)
        elif base_cert.witness.get(v) == u:
            plan.placements[eid] = ("k0.matched", v)
        elif u in a:
            plan.placements[eid] = ("k0.from_a", u)
        elif v in a:
            plan.placements[eid] = ("k0.from_a", v)
        else:
            plan.placements[eid] = ("k0.other", u)
    return plan


def _plan_k2(g: Graph, k: int, ii: IIMatchingCertificate) -> SubdivisionPlan:
    plan = SubdivisionPlan(k, 2)
    v1: set[int] = set()
    v2: set[int] = set()
    for e in ii.m1:
        v1.update(g.edges[e])
    for e in ii.m2:
        v2.update(g.edges[e])
    plan.ingredients.update(ii=ii)
    plan.base_vertices_in_d = {v for v in range(g.n) if v not in v1}
    for eid, (u, v) in enumerate(g.edges):
        if eid in ii.m1:
            plan.placements[eid] = ("k2.m1", u)
        elif eid in ii.m2:
            plan.placements[eid] = ("k2.m2", u)
        elif u in v1:
            plan.placements[eid] = ("k2.from_m1", u)
        elif v in v1:
            plan.placements[eid] = ("k2.from_m1", v)
        elif v in v2:
            plan.placements[eid] = ("k2.rest", v)
        else:
            plan.placements[eid] = ("k2.rest", u)
    return plan


def plan_subdivision(g: Graph, k: int, budget: int | None = None) -> SubdivisionPlan:
    if k < 1:
        raise ValueError("plans exist for k >= 1")
    r = k % 4
    if r == 3:
        return _plan_k3(g, k)
    if r == 1:
        return _plan_k1(g, k)
    if r == 0:
        if is_forest(g):
            from .tree import tree_gamma_sp_set
            _, cert = tree_gamma_sp_set(g)
        else:
            cert = gamma_sp_exact(g, budget=budget).certificate
        return _plan_k0(g, k, cert)
    return _plan_k2(g, k, max_ii_matching(g, budget=budget))


def realize(sd: SubdivisionMap, plan: SubdivisionPlan) -> set[int]:
    d = set(plan.base_vertices_in_d)
    g = sd.base
    for eid, (name, start) in plan.placements.items():
        u, v = g.edges[eid]
        other = v if start == u else u
        for s in pattern(name, sd.k):
            d.add(sd.position(start, other, s))
    return d


def build_superdom_set_subdivision(g: Graph, k: int, budget: int | None = None
                                   ) -> tuple[SubdivisionMap, SuperDomCertificate, SubdivisionPlan]:
    """Explicit super dominating set of S_k(G) of size gamma_sp(S_k(G)).

    The set is verified on S_k(G) and its size checked against the formula;
    any mismatch raises CertificateError instead of returning a wrong set.
    """
    sd = subdivide(g, k)
    if k == 0:
        cert = gamma_sp_exact(g, budget=budget).certificate
        return sd, cert, SubdivisionPlan(0, 0, set(cert.d))
    plan = plan_subdivision(g, k, budget)
    d = realize(sd, plan)
    try:
        cert = verify_super_dom(sd.result, d)
    except NotSuperDominating as exc:
        raise CertificateError(f"constructed set is not super dominating: {exc}") from exc
    value = gamma_sp_subdivision_value(g, k, budget).value if k % 4 in (1, 3) else None
    if value is None:
        value = _formula_from_plan(g, plan)
    if cert.size != value or cert.size != plan.expected_size():
        raise CertificateError(f"constructed set has size {cert.size}, formula gives {value}")
    return sd, cert, plan


def _formula_from_plan(g: Graph, plan: SubdivisionPlan) -> int:
    k = plan.k
    if plan.residue == 0:
        return k // 2 * g.m + plan.ingredients["cert"].size
    return k // 2 * g.m + g.n - plan.ingredients["ii"].size


@dataclass(frozen=True)
class ComponentRow:
    vertices: tuple[int, ...]
    n: int
    m: int
    value: int
    provenance: str


def subdivision_additivity(g: Graph, k: int, budget: int | None = None) -> tuple[list[ComponentRow], int]:
    """Per-component values of gamma_sp(S_k(G)) and their total."""
    rows = []
    for comp in components(g):
        sub, _ = g.induced(comp)
        val = gamma_sp_subdivision_value(sub, k, budget)
        rows.append(ComponentRow(tuple(comp), sub.n, sub.m, val.value, val.provenance))
    return rows, sum(r.value for r in rows)
