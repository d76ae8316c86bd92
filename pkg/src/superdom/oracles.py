"""Brute-force reference computations used to cross-check the solvers.

Everything here works from definitions only and shares no search code with
the rest of the package. Graphs are small (n up to about 22).
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import numpy as np

from .graph import Graph


def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def is_super_dominating_mask(n: int, adj: list[int], d: int) -> bool:
    out = ((1 << n) - 1) & ~d
    x = out
    while x:
        low = x & -x
        v = low.bit_length() - 1
        x ^= low
        y = adj[v] & d
        ok = False
        while y:
            lb = y & -y
            u = lb.bit_length() - 1
            y ^= lb
            if adj[u] & out == low:
                ok = True
                break
        if not ok:
            return False
    return True


def brute_gamma_sp(g: Graph) -> tuple[int, list[int]]:
    """Smallest super dominating set by increasing-size subset search."""
    adj = _masks(g)
    for size in range(g.n + 1):
        for d in combinations(range(g.n), size):
            mask = sum(1 << v for v in d)
            if is_super_dominating_mask(g.n, adj, mask):
                return size, list(d)
    raise AssertionError("V is always super dominating")


def all_min_super_dominating(g: Graph) -> list[frozenset[int]]:
    size, _ = brute_gamma_sp(g)
    adj = _masks(g)
    return [frozenset(d) for d in combinations(range(g.n), size)
            if is_super_dominating_mask(g.n, adj, sum(1 << v for v in d))]


def labeling_optimum(g: Graph) -> int:
    """max |A| over disjoint (A, B) with E[A, B] a matching covering A and B.

    Enumerates A. A core B exists iff every x in A has a neighbour outside A
    whose only neighbour in A is x; picking one such neighbour per x gives B.
    """
    n = g.n
    adj = _masks(g)
    best = 0
    for a in range(1 << n):
        na = bin(a).count("1")
        if na <= best:
            continue
        owners = set()
        for u in range(n):
            if not a >> u & 1:
                hit = adj[u] & a
                if hit and hit & (hit - 1) == 0:
                    owners.add(hit)
        if len(owners) == na:
            best = na
    return best


def matching_number(g: Graph) -> int:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return len(nx.max_weight_matching(h, maxcardinality=True))


def independence_number(g: Graph) -> int:
    adj = _masks(g)
    for size in range(g.n, -1, -1):
        for s in combinations(range(g.n), size):
            m = sum(1 << v for v in s)
            if all(not adj[v] & m for v in s):
                return size
    return 0


def domination_number(g: Graph) -> int:
    adj = _masks(g)
    full = (1 << g.n) - 1
    for size in range(g.n + 1):
        for s in combinations(range(g.n), size):
            cov = 0
            for v in s:
                cov |= adj[v] | 1 << v
            if cov == full:
                return size
    return g.n


def packing_number(g: Graph) -> int:
    """Largest set with pairwise distance at least 3."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    dist = dict(nx.all_pairs_shortest_path_length(h, cutoff=2))
    for size in range(g.n, -1, -1):
        for s in combinations(range(g.n), size):
            if all(v not in dist[u] for u, v in combinations(s, 2)):
                return size
    return 0


def dr_domain_size(g: Graph) -> int:
    """Largest set of vertices with distinct incident representative edges
    (Kuhn's augmenting paths on the vertex-edge incidence graph)."""
    owner: dict[int, int] = {}

    def augment(v: int, seen: set[int]) -> bool:
        for w in g.adj[v]:
            e = g.edge_id(v, w)
            if e in seen:
                continue
            seen.add(e)
            if e not in owner or augment(owner[e], seen):
                owner[e] = v
                return True
        return False

    return sum(augment(v, set()) for v in range(g.n))


def has_even_cycle(g: Graph) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return any(len(c) % 2 == 0 for c in nx.simple_cycles(h))


def _induced_matching_sets(g: Graph) -> np.ndarray:
    """Boolean table over vertex subsets S: does G[S] have all degrees 1?"""
    n = g.n
    idx = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for v, m in enumerate(_masks(g)):
        inside = (idx >> v) & 1
        deg = np.bitwise_count(idx & m)
        ok &= (inside == 0) | (deg == 1)
    return ok


def ii_number(g: Graph) -> int:
    """max |M1| + |M2| over vertex-disjoint induced matchings M1, M2.

    An induced matching is determined by its vertex set S (G[S] 1-regular),
    so this is a max over disjoint pairs (S1, S2) of such sets, done with a
    subset-maximum transform over all 2^n subsets.
    """
    n = g.n
    if n == 0:
        return 0
    ok = _induced_matching_sets(g)
    idx = np.arange(1 << n, dtype=np.int64)
    val = np.where(ok, np.bitwise_count(idx).astype(np.int64) // 2, -1)
    best_sub = val.copy()
    for b in range(n):
        shaped = best_sub.reshape(-1, 2, 1 << b)
        np.maximum(shaped[:, 1, :], shaped[:, 0, :], out=shaped[:, 1, :])
    comp = ((1 << n) - 1) ^ idx
    total = np.where(ok, val + best_sub[comp], -1)
    return int(total.max())


def ii_number_by_matchings(g: Graph) -> int:
    """Same quantity as ii_number by enumerating matchings and testing that
    their conflict graph is bipartite; only for tiny graphs."""
    best = 0
    edges = g.edges
    for size in range(1, g.n // 2 + 1):
        found = False
        for sub in combinations(range(len(edges)), size):
            ends = [v for e in sub for v in edges[e]]
            if len(set(ends)) != 2 * size:
                continue
            h = nx.Graph()
            h.add_nodes_from(sub)
            for e, f in combinations(sub, 2):
                if any(g.has_edge(x, y) for x in edges[e] for y in edges[f]):
                    h.add_edge(e, f)
            if nx.is_bipartite(h):
                found = True
                break
        if not found:
            break
        best = size
    return best
