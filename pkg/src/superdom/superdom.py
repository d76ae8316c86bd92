"""Super dominating sets: verification, cores, the exchange transform, an
exact branch-and-bound solver, closed forms and the bounds harness.

A set D is super dominating when every x outside D has a neighbour y in D
whose only neighbour outside D is x. Equivalently (with A = V - D and B a
core of D) the edges between A and B form a matching covering A and B, so
gamma_sp(G) = n - max |A| over such pairs (A, B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, components, is_bipartite, spanning_tree
from .matching import (
    CertificateError,
    SearchIncomplete,
    max_2packing,
    max_independent,
    max_matching,
)


class NotSuperDominating(ValueError):
    """Refusal from the verifier; ``vertex`` is the first vertex outside D
    (smallest id) that has no private super-dominator."""

    def __init__(self, vertex: int, reason: str):
        super().__init__(f"vertex {vertex}: {reason}")
        self.vertex = vertex
        self.reason = reason


@dataclass(frozen=True)
class SuperDomCertificate:
    d: frozenset[int]
    a: frozenset[int]
    b: frozenset[int]
    witness: dict[int, int] = field(hash=False)

    @property
    def size(self) -> int:
        return len(self.d)

    def sorted_set(self) -> list[int]:
        return sorted(self.d)

    def check_matching(self, g: Graph) -> None:
        """E[a, b] must be exactly the witness pairs."""
        pairs = {(min(x, y), max(x, y)) for x, y in self.witness.items()}
        for u, v in g.edges:
            cross = (u in self.a and v in self.b) or (u in self.b and v in self.a)
            if cross and (u, v) not in pairs:
                raise CertificateError(f"extra edge ({u}, {v}) between complement and core")
        if set(self.witness) != set(self.a) or set(self.witness.values()) != set(self.b):
            raise CertificateError("witness map does not pair complement with core")
        if len(self.b) != len(self.a):
            raise CertificateError("core and complement differ in size")


def verify_super_dom(g: Graph, d: Iterable[int]) -> SuperDomCertificate:
    """Check that ``d`` is super dominating and return a certificate whose
    witness for each outside vertex is its smallest-id super-dominator."""
    dset = frozenset(d)
    for v in dset:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    outside = [x for x in range(g.n) if x not in dset]
    outset = frozenset(outside)
    witness: dict[int, int] = {}
    for x in outside:
        found = -1
        dominated = False
        for y in g.adj[x]:
            if y not in dset:
                continue
            dominated = True
            if all(z == x or z in dset for z in g.adj[y]):
                found = y
                break
        if found < 0:
            reason = "no super-dominator in D" if dominated else "not dominated by D"
            raise NotSuperDominating(x, reason)
        witness[x] = found
    return SuperDomCertificate(dset, outset, frozenset(witness.values()), witness)


def is_super_dominating(g: Graph, d: Iterable[int]) -> bool:
    try:
        verify_super_dom(g, d)
    except NotSuperDominating:
        return False
    return True


def certificate_from_labeling(g: Graph, a: Iterable[int], b: Iterable[int]) -> SuperDomCertificate:
    """Certificate for D = V - a with core b, provided E[a, b] is a matching
    covering a and b; raises CertificateError otherwise."""
    aset, bset = frozenset(a), frozenset(b)
    if aset & bset:
        raise CertificateError("a and b intersect")
    witness = {}
    for x in aset:
        ys = [y for y in g.adj[x] if y in bset]
        if len(ys) != 1:
            raise CertificateError(f"vertex {x} has {len(ys)} neighbours in the core")
        witness[x] = ys[0]
    for y in bset:
        xs = [x for x in g.adj[y] if x in aset]
        if len(xs) != 1:
            raise CertificateError(f"core vertex {y} has {len(xs)} neighbours outside D")
    d = frozenset(range(g.n)) - aset
    return SuperDomCertificate(d, aset, bset, witness)


def extract_core(g: Graph, cert: SuperDomCertificate) -> frozenset[int]:
    cert.check_matching(g)
    return cert.b


def exchange(g: Graph, cert: SuperDomCertificate) -> SuperDomCertificate:
    """(D - D*) + (V - D): swaps the roles of complement and core."""
    cert.check_matching(g)
    new = certificate_from_labeling(g, cert.b, cert.a)
    assert new.d == (cert.d - cert.b) | cert.a
    return new


def containing_vertex(g: Graph, cert: SuperDomCertificate, v: int) -> SuperDomCertificate:
    """A super dominating set of the same size that contains ``v``."""
    return cert if v in cert.d else exchange(g, cert)


# -- exact search -------------------------------------------------------------

@dataclass(frozen=True)
class GammaSpResult:
    value: int
    certificate: SuperDomCertificate
    nodes: int


def _seed_pairs(g: Graph) -> list[tuple[int, int]]:
    """(a, b) pairs from the tree labelling of a spanning tree, pruned until
    the pairs are valid in g itself. g must be connected."""
    from .tree import tree_labeling

    st = spanning_tree(g, 0)
    h = Graph.from_edges(g.n, [g.edges[e] for e in st.edges])
    lab = tree_labeling(h)
    a = set(lab.a)
    b = set(lab.b)
    mate = lab.matching.mate(h)
    changed = True
    while changed:
        changed = False
        for u, v in g.edges:
            if mate[u] == v:
                continue
            for x, y in ((u, v), (v, u)):
                if x in a and y in b:
                    for z in (x, mate[x]):
                        a.discard(z)
                        b.discard(z)
                    changed = True
    return [(x, mate[x]) for x in sorted(a)]


def _component_search(g: Graph, cap: int, seed: list[tuple[int, int]], budget: int | None,
                      counter: list[int]) -> list[tuple[int, int]]:
    n = g.n
    adj = g.adjacency_masks()
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    best = [list(seed)]
    chosen: list[tuple[int, int]] = []

    def rec(idx: int, undecided: int, amask: int, bmask: int) -> bool:
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise SearchIncomplete("gamma_sp search budget exhausted")
        while idx < n and not (undecided >> order[idx]) & 1:
            idx += 1
        count = len(chosen)
        if idx == n:
            if count > len(best[0]):
                best[0] = list(chosen)
            return count >= cap
        # bound: pairs still formable among undecided vertices
        ea = eb = 0
        x = undecided
        while x:
            low = x & -x
            u = low.bit_length() - 1
            if not adj[u] & bmask:
                ea |= low
            if not adj[u] & amask:
                eb |= low
            x ^= low
        na, nb = bin(ea).count("1"), bin(eb).count("1")
        nu = bin(ea | eb).count("1")
        if count + min(na, nb, nu // 2) <= len(best[0]):
            return False
        v = order[idx]
        bit = 1 << v
        rest = undecided & ~bit
        # v in A, partner in B
        if not adj[v] & bmask:
            cand = adj[v] & rest & eb
            while cand:
                low = cand & -cand
                w = low.bit_length() - 1
                cand ^= low
                if adj[w] & (amask | bit) != bit:
                    continue
                chosen.append((v, w))
                if rec(idx + 1, rest & ~low, amask | bit, bmask | low):
                    return True
                chosen.pop()
        # v in B, partner in A
        if not adj[v] & amask:
            cand = adj[v] & rest & ea
            while cand:
                low = cand & -cand
                w = low.bit_length() - 1
                cand ^= low
                if adj[w] & (bmask | bit) != bit:
                    continue
                chosen.append((w, v))
                if rec(idx + 1, rest & ~low, amask | low, bmask | bit):
                    return True
                chosen.pop()
        return rec(idx + 1, rest, amask, bmask)

    if len(best[0]) < cap:
        rec(0, (1 << n) - 1, 0, 0)
    return best[0]


def gamma_sp_exact(g: Graph, budget: int | None = None, seed: bool = True) -> GammaSpResult:
    """Exact gamma_sp with a certificate.

    Components are solved independently; isolated vertices always belong to
    D. Each component maximises the number of (A, B) pairs by branching on
    the highest-degree undecided vertex (A, then B, then neither) and stops
    as soon as the pair count reaches the matching number. ``budget`` caps
    the total number of search nodes; SearchIncomplete is raised when it is
    exceeded and carries the bounds known at that point.
    """
    a_all: list[int] = []
    b_all: list[int] = []
    counter = [0]
    solved_pairs = 0
    for ci, comp in enumerate(components(g)):
        if len(comp) == 1:
            continue
        sub, old = g.induced(comp)
        cap = len(max_matching(sub))
        start = _seed_pairs(sub) if seed else []
        try:
            pairs = _component_search(sub, cap, start, budget, counter)
        except SearchIncomplete as exc:
            later = [c for c in components(g)[ci + 1:] if len(c) > 1]
            rest_cap = cap + sum(len(max_matching(g.induced(c)[0])) for c in later)
            exc.upper = g.n - solved_pairs - len(start)
            exc.lower = g.n - solved_pairs - rest_cap
            raise
        solved_pairs += len(pairs)
        for x, y in pairs:
            a_all.append(old[x])
            b_all.append(old[y])
    cert = certificate_from_labeling(g, a_all, b_all)
    return GammaSpResult(cert.size, cert, counter[0])


# -- closed forms -------------------------------------------------------------

def gamma_sp_closed_form(family: str, n: int, k: int = 0) -> int:
    """Known values: ``path`` P_n (n >= 2), ``cycle`` C_n (n >= 3), ``star``
    K_{1,n} (n >= 2), ``star-subdivision`` S_k(K_{1,n}) (n >= 2, k >= 0)."""
    if family == "path":
        if n < 2:
            raise ValueError("path needs n >= 2")
        return math.ceil(n / 2)
    if family == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return math.ceil((n + 1) / 2) if n % 4 == 2 else math.ceil(n / 2)
    if family == "star":
        if n < 2:
            raise ValueError("star needs n >= 2")
        return n
    if family == "star-subdivision":
        if n < 2 or k < 0:
            raise ValueError("star-subdivision needs n >= 2 and k >= 0")
        return n * (k + 2) // 2 if k % 2 == 0 else n * (k + 1) // 2 + 1
    raise ValueError(f"unknown family {family!r}")


# -- bounds -------------------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    n: int
    gamma_lower: int
    gamma_upper: int
    matching_number: int
    packing_number: int
    independence_number: int | None
    bipartite: bool
    has_isolated: bool
    gamma: int | None = None

    def holds(self) -> bool:
        return self.gamma is None or self.gamma_lower <= self.gamma <= self.gamma_upper


def bounds(g: Graph, exact: bool = False, budget: int | None = None) -> BoundsReport:
    """Lower: max(ceil(n/2) [no isolated vertices], n - matching number,
    independence number [bipartite]). Upper: min(n - 1 [no isolated
    vertices, n >= 2], n - max 2-packing of the non-isolated part)."""
    n = g.n
    iso = g.isolated_vertices()
    has_iso = bool(iso)
    mm = len(max_matching(g))
    bip = is_bipartite(g)
    lower = n - mm
    if not has_iso and n:
        lower = max(lower, math.ceil(n / 2))
    alpha = None
    if bip:
        alpha = len(max_independent(g))
        lower = max(lower, alpha)
    core, _ = g.induced(v for v in range(n) if g.adj[v])
    rho = len(max_2packing(core))
    upper = n - rho if core.n else n
    if not has_iso and n >= 2:
        upper = min(upper, n - 1)
    gamma = gamma_sp_exact(g, budget=budget).value if exact else None
    return BoundsReport(n, lower, upper, mm, rho, alpha, bip, has_iso, gamma)
