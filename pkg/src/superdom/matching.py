"""Exact auxiliary invariants: matching number, induced and II-matching
numbers, maximum 2-packing, independence and domination numbers, and
DR-functions (injective vertex -> incident edge maps)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, components, find_cycle, unicyclic_spanning, _grow_forest

EXHAUSTIVE_THRESHOLD = 16


class SearchIncomplete(RuntimeError):
    """A node budget ran out before the search could prove optimality."""

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class CertificateError(ValueError):
    """A certificate fails one of its invariants."""


# -- maximum matching ---------------------------------------------------------

@dataclass(frozen=True)
class Matching:
    edges: frozenset[int]
    covered: frozenset[int]

    def __len__(self) -> int:
        return len(self.edges)

    @classmethod
    def from_edge_ids(cls, g: Graph, eids) -> "Matching":
        eids = frozenset(eids)
        covered: set[int] = set()
        for e in eids:
            u, v = g.edges[e]
            if u in covered or v in covered:
                raise CertificateError(f"edges share a vertex at edge {e}")
            covered.update((u, v))
        return cls(eids, frozenset(covered))

    def mate(self, g: Graph) -> list[int]:
        mate = [-1] * g.n
        for e in self.edges:
            u, v = g.edges[e]
            mate[u], mate[v] = v, u
        return mate


def max_matching(g: Graph) -> Matching:
    """Maximum cardinality matching (Edmonds' blossom algorithm, O(n^3))."""
    n = g.n
    adj = g.adj
    match = [-1] * n
    for u in range(n):
        if match[u] < 0:
            for w in adj[u]:
                if match[w] < 0:
                    match[u], match[w] = w, u
                    break

    def augment_from(root: int) -> bool:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] < 0:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if match[to] < 0:
                        x = to
                        while x >= 0:
                            pv = parent[x]
                            nxt = match[pv]
                            match[x], match[pv] = pv, x
                            x = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for u in range(n):
        if match[u] < 0 and adj[u]:
            augment_from(u)
    return Matching.from_edge_ids(g, (g.edge_id(u, match[u]) for u in range(n) if match[u] > u))


# -- induced and II-matchings -------------------------------------------------

@dataclass(frozen=True)
class IIMatchingCertificate:
    """A matching split into two induced matchings ``m1`` and ``m2``."""

    m1: frozenset[int]
    m2: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.m1) + len(self.m2)

    def validate(self, g: Graph) -> None:
        """Re-check every invariant from scratch; raises CertificateError."""
        if self.m1 & self.m2:
            raise CertificateError("m1 and m2 share an edge")
        for e in self.m1 | self.m2:
            if not 0 <= e < g.m:
                raise CertificateError(f"edge id {e} out of range")
        Matching.from_edge_ids(g, self.m1 | self.m2)
        for name, part in (("m1", self.m1), ("m2", self.m2)):
            covered = set()
            for e in part:
                covered.update(g.edges[e])
            for u, v in g.edges:
                if u in covered and v in covered and g.edge_id(u, v) not in part:
                    raise CertificateError(f"{name} is not induced: edge ({u}, {v}) joins covered vertices")


def _pair_search(g: Graph, colors: int, budget: int | None) -> tuple[list[list[tuple[int, int]]], int]:
    """Maximise the number of vertex pairs (u, w), uw an edge, each pair
    coloured 1..colors, such that the vertices of one colour induce exactly
    their pairs. This is i(G) for one colour and ii(G) for two."""
    n = g.n
    adj = g.adjacency_masks()
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    full = (1 << n) - 1
    best_pairs: list[list[tuple[int, int]]] = [[] for _ in range(colors)]
    best = [0]
    nodes = [0]
    chosen: list[list[tuple[int, int]]] = [[] for _ in range(colors)]

    def popcount(x: int) -> int:
        return bin(x).count("1")

    def bound(undecided: int, cmasks: list[int]) -> int:
        per = []
        union = 0
        for cm in cmasks:
            elig = 0
            x = undecided
            while x:
                low = x & -x
                v = low.bit_length() - 1
                if not adj[v] & cm:
                    elig |= low
                x ^= low
            per.append(popcount(elig) // 2)
            union |= elig
        return min(sum(per), popcount(union) // 2)

    def rec(idx: int, undecided: int, cmasks: list[int], count: int) -> None:
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise SearchIncomplete("pair search budget exhausted", lower=best[0])
        while idx < n and not (undecided >> order[idx]) & 1:
            idx += 1
        if idx == n:
            if count > best[0]:
                best[0] = count
                for c in range(colors):
                    best_pairs[c] = list(chosen[c])
            return
        if count + bound(undecided, cmasks) <= best[0]:
            return
        v = order[idx]
        rest = undecided & ~(1 << v)
        for c in range(colors):
            cm = cmasks[c]
            if adj[v] & cm:
                continue
            cand = adj[v] & rest
            while cand:
                low = cand & -cand
                w = low.bit_length() - 1
                cand ^= low
                if adj[w] & cm:
                    continue
                new = list(cmasks)
                new[c] = cm | (1 << v) | low
                chosen[c].append((v, w))
                rec(idx + 1, rest & ~low, new, count + 1)
                chosen[c].pop()
        rec(idx + 1, rest, cmasks, count)

    if n:
        rec(0, full, [0] * colors, 0)
    return best_pairs, nodes[0]


def _pairs_to_eids(g: Graph, pairs) -> frozenset[int]:
    return frozenset(g.edge_id(u, w) for u, w in pairs)


def max_induced_matching(g: Graph, budget: int | None = None) -> IIMatchingCertificate:
    """Maximum induced matching, returned as an II-certificate with empty m2."""
    pairs, _ = _pair_search(g, 1, budget)
    return IIMatchingCertificate(_pairs_to_eids(g, pairs[0]), frozenset())


def max_ii_matching(g: Graph, budget: int | None = None) -> IIMatchingCertificate:
    """Maximum II-matching: a matching split into two induced matchings."""
    pairs, _ = _pair_search(g, 2, budget)
    cert = IIMatchingCertificate(_pairs_to_eids(g, pairs[0]), _pairs_to_eids(g, pairs[1]))
    if len(cert.m2) > len(cert.m1):
        cert = IIMatchingCertificate(cert.m2, cert.m1)
    return cert


# -- vertex-set problems ------------------------------------------------------

def _mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _max_independent_masks(n: int, adj: list[int], threshold: int) -> list[int]:
    """Lexicographically smallest maximum independent set of the mask graph."""
    if n <= threshold:
        for k in range(n, 0, -1):
            for combo in combinations(range(n), k):
                mask = 0
                ok = True
                for v in combo:
                    if adj[v] & mask:
                        ok = False
                        break
                    mask |= 1 << v
                if ok:
                    return list(combo)
        return []
    best: list[list[int]] = [[]]
    cur: list[int] = []

    def rec(cand: int) -> None:
        if len(cur) + bin(cand).count("1") <= len(best[0]):
            return
        if not cand:
            best[0] = list(cur)
            return
        low = cand & -cand
        v = low.bit_length() - 1
        cur.append(v)
        rec(cand & ~low & ~adj[v])
        cur.pop()
        rec(cand & ~low)

    rec((1 << n) - 1)
    return best[0]


def max_independent(g: Graph, threshold: int = EXHAUSTIVE_THRESHOLD) -> list[int]:
    """A maximum independent set, lexicographically smallest among them."""
    return _max_independent_masks(g.n, g.adjacency_masks(), threshold)


def max_2packing(g: Graph, threshold: int = EXHAUSTIVE_THRESHOLD) -> list[int]:
    """A maximum set of vertices with pairwise distance at least 3."""
    adj = g.adjacency_masks()
    square = []
    for v in range(g.n):
        m = adj[v]
        for w in _mask_to_list(adj[v]):
            m |= adj[w]
        square.append(m & ~(1 << v))
    return _max_independent_masks(g.n, square, threshold)


def min_dominating(g: Graph, threshold: int = EXHAUSTIVE_THRESHOLD) -> list[int]:
    """A minimum dominating set, lexicographically smallest among them."""
    n = g.n
    if n == 0:
        return []
    closed = [m | (1 << v) for v, m in enumerate(g.adjacency_masks())]
    full = (1 << n) - 1
    if n <= threshold:
        for k in range(1, n + 1):
            for combo in combinations(range(n), k):
                dom = 0
                for v in combo:
                    dom |= closed[v]
                if dom == full:
                    return list(combo)
    # include-first DFS in id order with growing target: first hit is lex-smallest
    maxcover = max(bin(c).count("1") for c in closed)
    # last index at which each vertex can still be dominated
    last = [max(_mask_to_list(closed[v])) for v in range(n)]
    deadline: list[int] = [0] * n
    for v in range(n):
        deadline[last[v]] |= 1 << v
    cur: list[int] = []

    def rec(i: int, dom: int, target: int) -> bool:
        undom = full & ~dom
        if not undom:
            return True
        if len(cur) >= target:
            return False
        need = -(-bin(undom).count("1") // maxcover)
        if len(cur) + need > target or i == n:
            return False
        cur.append(i)
        if rec(i + 1, dom | closed[i], target):
            return True
        cur.pop()
        if deadline[i] & ~dom:
            return False
        return rec(i + 1, dom, target)

    for target in range(1, n + 1):
        if rec(0, 0, target):
            return list(cur)
    raise AssertionError("unreachable: V(G) dominates")


# -- DR-functions -------------------------------------------------------------

@dataclass(frozen=True)
class DRFunction:
    """Injective partial map vertex -> incident edge id."""

    assignment: dict[int, int]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.assignment)

    def validate(self, g: Graph) -> None:
        used = set()
        for v, e in self.assignment.items():
            if v not in g.edges[e]:
                raise CertificateError(f"vertex {v} is not an endpoint of edge {e}")
            if e in used:
                raise CertificateError(f"edge {e} represents two vertices")
            used.add(e)


def dr_function(g: Graph, root: int | None = None, edge_ids: set[int] | None = None) -> DRFunction:
    """Maximum DR-function, built component by component.

    Tree components map every non-root vertex to its parent edge (root: the
    largest id unless ``root`` lies in the component). Components with a cycle
    use a unicyclic spanning subgraph whose cycle is traversed cyclically.
    ``edge_ids`` restricts the representatives to a spanning subgraph.
    """
    if edge_ids is not None:
        h = Graph.from_edges(g.n, [g.edges[e] for e in sorted(edge_ids)])
        sub = dr_function(h, root)
        return DRFunction({v: g.edge_id(*h.edges[e]) for v, e in sub.assignment.items()})
    assignment: dict[int, int] = {}
    for comp in components(g):
        if len(comp) == 1:
            continue
        cyc = find_cycle(g, comp)
        if cyc is None:
            r = root if root is not None and root in comp else comp[-1]
            parent, _ = _grow_forest(g, [r])
            for v in comp:
                if v != r:
                    assignment[v] = g.edge_id(v, parent[v])
        else:
            sub, old = g.induced(comp)
            new_of = {v: i for i, v in enumerate(old)}
            h = unicyclic_spanning(sub, [new_of[v] for v in cyc])
            for i, c in enumerate(cyc):
                nxt = cyc[(i + 1) % len(cyc)]
                assignment[c] = g.edge_id(c, nxt)
            on_cycle = set(cyc)
            for i, v in enumerate(old):
                if v not in on_cycle:
                    assignment[v] = g.edge_id(v, old[h.parent[i]])
    return DRFunction(assignment)
