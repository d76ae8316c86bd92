"""Simple undirected graphs with dense integer ids, plus the two constructions
used throughout the package (k-subdivision and the product with K4)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

INF = float("inf")


class GraphError(ValueError):
    """Raised for malformed graph input."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edge ids are positions in ``edges``; every edge is stored as ``(u, v)``
    with ``u < v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _edge_index: dict = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise GraphError("negative vertex count")
        norm: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex id out of range in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphError(f"duplicate edge {key}")
            index[key] = len(norm)
            norm.append(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        adj = tuple(tuple(sorted(a)) for a in nbrs)
        return cls(n, tuple(norm), adj, index)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[(u, v) if u < v else (v, u)]

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if v == a else a

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; returns it with the
        list mapping new ids back to old ids."""
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return Graph.from_edges(len(old), edges), old

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m`` then ``m`` lines ``u v``.

    Blank lines and lines starting with ``#`` are ignored. Errors name the
    1-based line number.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise GraphError("line 1: missing header 'n m'")
    lineno, head = rows[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise GraphError(f"line {lineno}: header must be two integers 'n m'") from None
    if n < 0 or m < 0:
        raise GraphError(f"line {lineno}: negative count in header")
    body = rows[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise GraphError(f"line {where}: header announces {m} edges, found {len(body)}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, parts in body:
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex id") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"line {lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    """Canonical edge-list text (edges sorted)."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


# -- small families -----------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def paw_graph() -> Graph:
    """Triangle 0-1-2 with pendant vertex 3 on vertex 0."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


# -- subdivision --------------------------------------------------------------

@dataclass(frozen=True)
class SubdivisionMap:
    """S_k(base) with provenance of every subdivision vertex.

    ``super_edges[e]`` lists ``u, (uv)_1, ..., (uv)_k, v`` for base edge
    ``e = (u, v)`` (``u < v``).
    """

    base: Graph
    k: int
    result: Graph
    super_edges: tuple[tuple[int, ...], ...]

    def position(self, u: int, v: int, s: int) -> int:
        """Vertex id of ``(uv)_s`` counted from ``u`` (``0 <= s <= k+1``)."""
        path = self.super_edges[self.base.edge_id(u, v)]
        if u == path[0]:
            return path[s]
        return path[self.k + 1 - s]

    def origin(self, x: int) -> tuple[int, int] | None:
        """``(base edge id, position from the smaller endpoint)`` for a
        subdivision vertex; None for base vertices."""
        if x < self.base.n:
            return None
        off = x - self.base.n
        return off // self.k, off % self.k + 1


def subdivide(g: Graph, k: int) -> SubdivisionMap:
    if k < 0:
        raise GraphError("subdivision count must be >= 0")
    edges = []
    paths = []
    nxt = g.n
    for u, v in g.edges:
        path = [u] + list(range(nxt, nxt + k)) + [v]
        nxt += k
        paths.append(tuple(path))
        edges.extend(zip(path, path[1:]))
    return SubdivisionMap(g, k, Graph.from_edges(nxt, edges), tuple(paths))


# -- product with K4 ----------------------------------------------------------

def lex_product_k4(f: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """f o K4: vertex ``4x + (i-1)`` is the copy ``(x, i)``, ``i`` in 1..4.

    Returns the graph and the role list ``roles[w] = (x, i)``.
    """
    def vid(x: int, i: int) -> int:
        return 4 * x + i - 1

    edges = []
    for x in range(f.n):
        for i in range(1, 5):
            for j in range(i + 1, 5):
                edges.append((vid(x, i), vid(x, j)))
    for x, y in f.edges:
        for i in range(1, 5):
            for j in range(1, 5):
                edges.append((vid(x, i), vid(y, j)))
    roles = [(w // 4, w % 4 + 1) for w in range(4 * f.n)]
    return Graph.from_edges(4 * f.n, edges), roles


# -- structure ----------------------------------------------------------------

def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest id."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def two_coloring(g: Graph) -> list[int] | None:
    """Proper 2-colouring (0/1 per vertex) or None when g is not bipartite."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``INF`` for forests. BFS from every vertex."""
    best = INF
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks as edge-id lists; a block is a bridge or a 2-connected piece."""

    blocks: tuple[tuple[int, ...], ...]
    component_index: tuple[int, ...]
    even_cycle_free: tuple[bool, ...]

    @property
    def oc(self) -> int:
        return sum(self.even_cycle_free)


def _biconnected_blocks(g: Graph) -> list[list[int]]:
    """Edge-id blocks by Hopcroft-Tarjan, iterative."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[list[int]] = []
    estack: list[int] = []
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, parent edge id, neighbour iterator position)
        stack = [(root, -1, 0)]
        while stack:
            u, pe, i = stack[-1]
            if i < len(g.adj[u]):
                stack[-1] = (u, pe, i + 1)
                w = g.adj[u][i]
                eid = g.edge_id(u, w)
                if eid == pe:
                    continue
                if disc[w] < 0:
                    estack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, 0))
                elif disc[w] < disc[u]:
                    estack.append(eid)
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if not stack:
                    continue
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    block = []
                    while True:
                        e = estack.pop()
                        block.append(e)
                        if e == pe:
                            break
                    blocks.append(sorted(block))
    blocks.sort()
    return blocks


def _block_vertices(g: Graph, block: Sequence[int]) -> set[int]:
    vs: set[int] = set()
    for e in block:
        vs.update(g.edges[e])
    return vs


def block_decompose(g: Graph) -> BlockDecomposition:
    comps = components(g)
    comp_of = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    blocks = _biconnected_blocks(g)
    ecf = [True] * len(comps)
    for block in blocks:
        if len(block) == 1:
            continue
        nv = len(_block_vertices(g, block))
        odd_cycle = len(block) == nv and nv % 2 == 1
        if not odd_cycle:
            ecf[comp_of[g.edges[block[0]][0]]] = False
    return BlockDecomposition(tuple(tuple(b) for b in blocks), tuple(comp_of), tuple(ecf))


def _tree_path(parent: list[int], depth: list[int], a: int, b: int) -> list[int]:
    """Vertices on the tree path a..b."""
    left, right = [a], [b]
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return left + right[::-1]


def _bfs_tree(g: Graph, allowed: set[int], root: int) -> tuple[list[int], list[int]]:
    parent = [-1] * g.n
    depth = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w in allowed and depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                queue.append(w)
    return parent, depth


def find_cycle(g: Graph, vertices: Iterable[int] | None = None) -> list[int] | None:
    """Some cycle (vertex sequence) inside the given vertex set, or None."""
    allowed = set(range(g.n)) if vertices is None else set(vertices)
    done: set[int] = set()
    for s in sorted(allowed):
        if s in done:
            continue
        parent, depth = _bfs_tree(g, allowed, s)
        reached = [v for v in allowed if depth[v] >= 0]
        done.update(reached)
        for u in sorted(reached):
            for w in g.adj[u]:
                if w in allowed and u < w and parent[w] != u and parent[u] != w:
                    return _tree_path(parent, depth, u, w)
    return None


def _find_even_cycle_in_block(g: Graph, block: Sequence[int]) -> list[int] | None:
    vs = _block_vertices(g, block)
    if len(block) == 1:
        return None
    if len(block) == len(vs):
        cyc = find_cycle(g, vs)
        return cyc if len(vs) % 2 == 0 else None
    sub, old = g.induced(vs)
    # blocks are induced subgraphs of g, so sub is the block itself
    color = two_coloring(sub)
    if color is not None:
        cyc = find_cycle(sub)
        return [old[x] for x in cyc]
    parent, depth = _bfs_tree(sub, set(range(sub.n)), 0)
    odd = None
    for u, w in sub.edges:
        if depth[u] % 2 == depth[w] % 2:
            odd = _tree_path(parent, depth, u, w)
            break
    assert odd is not None
    on_cycle = {x: i for i, x in enumerate(odd)}
    cyc_edges = {frozenset((odd[i], odd[(i + 1) % len(odd)])) for i in range(len(odd))}
    # an ear: a path between two distinct cycle vertices, internally off the cycle
    ear = None
    for u, w in sub.edges:
        if frozenset((u, w)) in cyc_edges:
            continue
        if u in on_cycle and w in on_cycle:
            ear = [u, w]
            break
        if u in on_cycle or w in on_cycle:
            x, z = (u, w) if u in on_cycle else (w, u)
            allowed = set(range(sub.n)) - {x}
            prev = {z: -1}
            queue = deque([z])
            end = None
            while queue and end is None:
                a = queue.popleft()
                for b in sub.adj[a]:
                    if b in allowed and b not in prev:
                        prev[b] = a
                        if b in on_cycle:
                            end = b
                            break
                        queue.append(b)
            assert end is not None
            tail = [end]
            while tail[-1] != z:
                tail.append(prev[tail[-1]])
            ear = [x] + tail[::-1]
            break
    assert ear is not None
    x, y = ear[0], ear[-1]
    i, j = on_cycle[x], on_cycle[y]
    L = len(odd)
    arc1 = [odd[(i + t) % L] for t in range((j - i) % L + 1)]  # x .. y forward
    arc2 = [odd[(i - t) % L] for t in range((i - j) % L + 1)]  # x .. y backward
    inner = ear[1:-1]
    for arc in (arc1, arc2):
        cycle = arc + inner[::-1]
        if len(cycle) % 2 == 0:
            return [old[v] for v in cycle]
    raise AssertionError("theta graph without an even cycle")


def find_even_cycle(g: Graph, vertices: Iterable[int] | None = None) -> list[int] | None:
    allowed = None if vertices is None else set(vertices)
    for block in _biconnected_blocks(g):
        if allowed is not None and g.edges[block[0]][0] not in allowed:
            continue
        cyc = _find_even_cycle_in_block(g, block)
        if cyc is not None:
            return cyc
    return None


class NoEvenCycle(Exception):
    """Raised when an even cycle was requested from an even-cycle-free graph."""


@dataclass(frozen=True)
class SpanningStructure:
    """Spanning tree or unicyclic spanning subgraph of a connected graph."""

    edges: tuple[int, ...]          # edge ids of g
    coloring: tuple[int, ...] | None  # proper 2-colouring of H (None: odd cycle)
    cycle: tuple[int, ...] | None   # the unique cycle of H, if any
    parent: tuple[int, ...]         # forest parent pointers toward the cycle / root
    root: int | None                # root when H is a tree


def _grow_forest(g: Graph, sources: Sequence[int]) -> tuple[list[int], list[int]]:
    parent = [-1] * g.n
    depth = [-1] * g.n
    queue = deque()
    for s in sources:
        depth[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                queue.append(w)
    return parent, depth


def unicyclic_spanning(g: Graph, cycle: Sequence[int]) -> SpanningStructure:
    """Spanning subgraph containing ``cycle`` as its only cycle (g connected)."""
    parent, depth = _grow_forest(g, cycle)
    if any(d < 0 for d in depth):
        raise GraphError("graph is not connected")
    eids = [g.edge_id(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    eids += [g.edge_id(v, parent[v]) for v in range(g.n) if parent[v] >= 0]
    coloring = _color_structure(g, eids)
    return SpanningStructure(tuple(sorted(eids)), coloring, tuple(cycle), tuple(parent), None)


def spanning_tree(g: Graph, root: int = 0) -> SpanningStructure:
    parent, depth = _grow_forest(g, [root])
    if any(d < 0 for d in depth):
        raise GraphError("graph is not connected")
    eids = sorted(g.edge_id(v, parent[v]) for v in range(g.n) if parent[v] >= 0)
    coloring = tuple(d % 2 for d in depth)
    return SpanningStructure(tuple(eids), coloring, None, tuple(parent), root)


def _color_structure(g: Graph, eids: Sequence[int]) -> tuple[int, ...] | None:
    h = Graph.from_edges(g.n, [g.edges[e] for e in eids])
    color = two_coloring(h)
    return None if color is None else tuple(color)


def spanning_structure(g: Graph, want_even_cycle: bool, root: int = 0) -> SpanningStructure:
    """Unicyclic spanning subgraph with an even cycle, or a spanning tree.

    With ``want_even_cycle`` and no even cycle present, raises NoEvenCycle.
    """
    if not is_connected(g):
        raise GraphError("spanning_structure needs a connected graph")
    if want_even_cycle:
        cyc = find_even_cycle(g)
        if cyc is None:
            raise NoEvenCycle("graph contains no even cycle")
        return unicyclic_spanning(g, cyc)
    return spanning_tree(g, root)
