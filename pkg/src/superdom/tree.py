"""Linear-time super domination on forests.

For a tree T, gamma_sp(T) = n(T) - (matching number of T). A witnessing set
comes from labelling the vertices of a maximum matching M with A/B in
preorder so that the edges between A and B are exactly M; D is then V - A.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, is_forest
from .matching import CertificateError, Matching
from .superdom import SuperDomCertificate, certificate_from_labeling


class NotAForest(ValueError):
    pass


@dataclass
class OpCounter:
    """Counts elementary steps (vertex visits and adjacency scans)."""

    steps: int = 0


A, B, NONE = "A", "B", None


@dataclass(frozen=True)
class TreeLabeling:
    matching: Matching
    label: tuple[str | None, ...]
    roots: tuple[int, ...]

    @property
    def a(self) -> frozenset[int]:
        return frozenset(v for v, lab in enumerate(self.label) if lab == A)

    @property
    def b(self) -> frozenset[int]:
        return frozenset(v for v, lab in enumerate(self.label) if lab == B)


def _require_forest(t: Graph) -> None:
    if not is_forest(t):
        raise NotAForest("input graph has a cycle")


def tree_max_matching(t: Graph, counter: OpCounter | None = None) -> Matching:
    """Maximum matching by leaf stripping: match a leaf to its neighbour when
    both are free, then delete them."""
    _require_forest(t)
    ops = counter or OpCounter()
    n = t.n
    deg = [len(a) for a in t.adj]
    removed = [False] * n
    leaves = deque(v for v in range(n) if deg[v] <= 1)
    mate = [-1] * n
    ops.steps += n
    while leaves:
        u = leaves.popleft()
        ops.steps += 1
        if removed[u]:
            continue
        removed[u] = True
        w = -1
        for x in t.adj[u]:
            ops.steps += 1
            if not removed[x]:
                w = x
                break
        if w < 0:
            continue  # isolated after earlier deletions: stays unmatched
        mate[u], mate[w] = w, u
        removed[w] = True
        for x in t.adj[w]:
            ops.steps += 1
            if not removed[x]:
                deg[x] -= 1
                if deg[x] == 1:
                    leaves.append(x)
                elif deg[x] == 0:
                    leaves.append(x)
    eids = [t.edge_id(u, mate[u]) for u in range(n) if mate[u] > u]
    return Matching.from_edge_ids(t, eids)


def tree_labeling(t: Graph, matching: Matching | None = None,
                  counter: OpCounter | None = None) -> TreeLabeling:
    """Preorder A/B labelling of a maximum matching of the forest ``t``.

    Each tree is rooted at its smallest-id matched vertex, which goes to A.
    A child of u joins the opposite side of u when uu_i is in M, the same
    side as u when it is matched elsewhere, and A when u is unmatched;
    unmatched children stay unlabelled.
    """
    _require_forest(t)
    ops = counter or OpCounter()
    if matching is None:
        matching = tree_max_matching(t, ops)
    mate = matching.mate(t)
    n = t.n
    label: list[str | None] = [NONE] * n
    seen = [False] * n
    roots = []
    for s in range(n):
        if seen[s]:
            continue
        # find the component and its smallest matched vertex
        comp = []
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in t.adj[u]:
                ops.steps += 1
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        matched = [v for v in comp if mate[v] >= 0]
        if not matched:
            continue
        r = min(matched)
        roots.append(r)
        label[r] = A
        stack = [(r, -1)]
        while stack:
            u, parent = stack.pop()
            ops.steps += 1
            for c in t.adj[u]:
                ops.steps += 1
                if c == parent:
                    continue
                if mate[c] < 0:
                    label[c] = NONE
                elif label[u] is NONE:
                    label[c] = A
                elif mate[u] == c:
                    label[c] = B if label[u] == A else A
                else:
                    label[c] = label[u]
                stack.append((c, u))
    lab = TreeLabeling(matching, tuple(label), tuple(roots))
    # E[A, B] must equal M; checked rather than assumed
    for u, v in t.edges:
        ops.steps += 1
        cross = {label[u], label[v]} == {A, B}
        if cross != (mate[u] == v):
            raise CertificateError(f"labelling violates E[A,B] = M at edge ({u}, {v})")
    return lab


def tree_gamma_sp_set(t: Graph, counter: OpCounter | None = None) -> tuple[int, SuperDomCertificate]:
    """gamma_sp of a forest and a minimum super dominating set, in linear time."""
    lab = tree_labeling(t, counter=counter)
    cert = certificate_from_labeling(t, lab.a, lab.b)
    value = t.n - len(lab.matching)
    assert cert.size == value
    return value, cert
