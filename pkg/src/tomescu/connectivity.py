"""Connectivity predicates: components, blocks, cores, lobes, Menger counts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, GraphError, _bits, components


class PreconditionError(GraphError):
    pass


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]


@dataclass(frozen=True)
class SLobes:
    s: tuple[int, int]
    vertex_sets: tuple[frozenset[int], ...]
    lobes: tuple[Graph, ...]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return len(components(g)) == 1


# -- max-flow helpers --------------------------------------------------------


def _max_flow(adj: dict, s, t, limit: int | None = None) -> int:
    """Unit-augmenting BFS max-flow on a residual capacity dict-of-dicts."""
    flow = 0
    while limit is None or flow < limit:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y, cap in adj[x].items():
                if cap > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            break
        y = t
        while parent[y] is not None:
            x = parent[y]
            adj[x][y] -= 1
            adj[y].setdefault(x, 0)
            adj[y][x] += 1
            y = x
        flow += 1
    return flow


def _split_network(g: Graph, s: int, t: int) -> dict:
    # vertex v -> (v, 0) in-node, (v, 1) out-node; s and t are uncapped
    big = g.n + 1
    adj: dict = {}
    for v in range(g.n):
        cap = big if v in (s, t) else 1
        adj.setdefault((v, 0), {})[(v, 1)] = cap
        adj.setdefault((v, 1), {})
    for u, v in g.edges():
        adj[(u, 1)][(v, 0)] = 1
        adj[(v, 1)][(u, 0)] = 1
    return adj


def local_vertex_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Maximum number of internally disjoint ``s``-``t`` paths.

    A direct edge ``st`` counts as one path.
    """
    if s == t:
        raise PreconditionError("endpoints must differ")
    return _max_flow(_split_network(g, s, t), (s, 1), (t, 0), limit)


def vertex_connectivity(g: Graph) -> int:
    """kappa(G), with kappa(K_n) = n - 1 (Esfahanian-Hakimi pair selection)."""
    n = g.n
    if n < 2:
        raise PreconditionError("vertex connectivity needs at least 2 vertices")
    if g.is_complete():
        return n - 1
    if not is_connected(g):
        return 0
    rows = g.rows
    v = min(range(n), key=lambda x: (rows[x].bit_count(), x))
    best = rows[v].bit_count()
    for w in range(n):
        if w != v and not rows[v] >> w & 1:
            best = min(best, local_vertex_connectivity(g, v, w, best))
    nbrs = list(_bits(rows[v]))
    for x, y in combinations(nbrs, 2):
        if not rows[x] >> y & 1:
            best = min(best, local_vertex_connectivity(g, x, y, best))
    return best


def is_l_connected(g: Graph, l: int) -> bool:
    if l < 1:
        raise PreconditionError("l must be at least 1")
    if g.n <= l:
        return False
    return vertex_connectivity(g) >= l


def edge_disjoint_path_count(g: Graph, u: int, v: int) -> int:
    if u == v:
        raise PreconditionError("endpoints must differ")
    adj: dict = {x: {} for x in range(g.n)}
    for a, b in g.edges():
        adj[a][b] = 1
        adj[b][a] = 1
    return _max_flow(adj, u, v)


# -- cores, blocks, lobes ----------------------------------------------------


def l_core_vertices(g: Graph, l: int) -> int:
    """Vertex mask of the l-core (0 if empty)."""
    if l < 0:
        raise PreconditionError("l must be nonnegative")
    rows = g.rows
    alive = g.vertex_mask()
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if (rows[v] & alive).bit_count() < l:
                alive &= ~(1 << v)
                changed = True
    return alive


def l_core(g: Graph, l: int) -> Graph:
    """The maximal subgraph of minimum degree >= l; ``Graph(0)`` when empty."""
    alive = l_core_vertices(g, l)
    if not alive:
        return Graph(0)
    return g.induced_subgraph(_bits(alive))


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Blocks (maximal 2-connected subgraphs or bridges) and cut vertices."""
    if not is_connected(g):
        raise PreconditionError("block decomposition needs a connected graph")
    n = g.n
    if n == 1:
        return BlockDecomposition((frozenset({0}),), frozenset())
    rows = g.rows
    disc = [-1] * n
    low = [0] * n
    blocks = []
    cuts = set()
    edge_stack = []
    disc[0] = 0
    counter = 1
    stack = [(0, -1, iter(_bits(rows[0])))]
    root_children = 0
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append((v, w))
                stack.append((w, v, iter(_bits(rows[w]))))
                if v == 0:
                    root_children += 1
                advanced = True
                break
            if w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != 0:
                    cuts.add(parent)
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(comp))
    if root_children > 1:
        cuts.add(0)
    blocks.sort(key=lambda b: sorted(b))
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


def is_2_connected(g: Graph) -> bool:
    if g.n < 3 or not is_connected(g):
        return False
    return not block_decomposition(g).cut_vertices


def s_lobes(g: Graph, x: int, y: int) -> SLobes:
    if x == y:
        raise PreconditionError("S must contain two distinct vertices")
    s_mask = (1 << x) | (1 << y)
    rest = g.vertex_mask() & ~s_mask
    rows = tuple(r & rest if rest >> v & 1 else 0 for v, r in enumerate(g.rows))
    comps = [c for c in components(Graph._raw(g.n, rows)) if not c & s_mask]
    if len(comps) < 2:
        raise PreconditionError(f"{{{x}, {y}}} is not a cut-set")
    sets = tuple(frozenset(_bits(c | s_mask)) for c in comps)
    return SLobes((x, y), sets, tuple(g.induced_subgraph(s) for s in sets))


def contains_theta(g: Graph) -> bool:
    """True iff two vertices are joined by three internally disjoint paths.

    In a simple graph at most one of the three can be the single edge, and
    the flow network carries that edge with unit capacity, so a flow of 3
    already satisfies the restriction.
    """
    rows = g.rows
    heavy = [v for v in range(g.n) if rows[v].bit_count() >= 3]
    for s, t in combinations(heavy, 2):
        if local_vertex_connectivity(g, s, t, 3) >= 3:
            return True
    return False
