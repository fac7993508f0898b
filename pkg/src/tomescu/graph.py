"""Immutable simple graphs on at most 64 vertices.

Each vertex ``v`` owns one adjacency row, an ``int`` whose bit ``w`` is set
when ``{v, w}`` is an edge.  Vertices are always labeled ``0 .. n-1``.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_VERTICES = 64


class GraphError(ValueError):
    """Base class for invalid graph operations."""


class LoopError(GraphError):
    pass


class NotAnEdgeError(GraphError):
    pass


class ContractionError(GraphError):
    pass


class EmptyGraphError(GraphError):
    pass


class CapacityError(GraphError):
    pass


class VertexError(GraphError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _drop_bit(row: int, v: int) -> int:
    """Remove bit ``v`` and shift the higher bits down by one."""
    low = row & ((1 << v) - 1)
    return low | ((row >> (v + 1)) << v)


class Graph:
    """A simple undirected graph with bit-row adjacency.

    Instances are immutable and hashable; every editing operation returns a
    new graph.  ``Graph(0)`` is the distinguished empty graph (used e.g. for
    an empty core).
    """

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Iterable[int] | None = None):
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        rows = (0,) * n if rows is None else tuple(rows)
        if len(rows) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full or row < 0:
                raise VertexError(f"row {v} references a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise LoopError(f"self-loop at vertex {v}")
            for w in _bits(row):
                if not rows[w] >> v & 1:
                    raise GraphError(f"adjacency is not symmetric at ({v}, {w})")
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, n: int, rows: tuple[int, ...]) -> "Graph":
        # trusted constructor for internal hot paths
        g = object.__new__(cls)
        g.n = n
        g.rows = rows
        g._hash = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise LoopError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexError(f"edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._raw(n, tuple(rows))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n)

    # -- basic queries ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __repr__(self):
        return f"Graph({self.n}, edges={list(self.edges())})"

    def __len__(self):
        return self.n

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexError(f"vertex {v} outside 0..{self.n - 1}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        self._check(v)
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def min_degree(self) -> int:
        if self.n == 0:
            raise EmptyGraphError("empty graph has no minimum degree")
        return min(r.bit_count() for r in self.rows)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(row | (1 << v) == full for v, row in enumerate(self.rows))

    # -- edits -----------------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        self._check(u)
        self._check(v)
        if u == v:
            raise LoopError(f"cannot add loop at vertex {u}")
        if self.rows[u] >> v & 1:
            return self
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._raw(self.n, tuple(rows))

    def delete_edge(self, u: int, v: int) -> "Graph":
        self._check(u)
        self._check(v)
        if u == v or not self.rows[u] >> v & 1:
            raise NotAnEdgeError(f"({u}, {v}) is not an edge")
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._raw(self.n, tuple(rows))

    def contract(self, u: int, v: int) -> "Graph":
        """Merge ``v`` into ``u``.

        Loops and parallel edges are dropped.  The merged vertex keeps label
        ``u`` and every label above ``v`` shifts down by one, so the merged
        vertex ends up at ``u - (u > v)``.
        """
        self._check(u)
        self._check(v)
        if u == v:
            raise ContractionError(f"cannot contract vertex {u} with itself")
        return Graph._raw(self.n - 1, _contract_rows(self.rows, u, v))

    def remove_vertex(self, v: int) -> "Graph":
        self._check(v)
        rows = tuple(_drop_bit(r, v) for w, r in enumerate(self.rows) if w != v)
        return Graph._raw(self.n - 1, rows)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph._raw(
            self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.rows))
        )

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced by ``vertices``, relabeled by increasing old label."""
        keep = sorted(set(vertices))
        if not keep:
            raise EmptyGraphError("induced subgraph on an empty vertex set")
        for v in keep:
            self._check(v)
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for w in _bits(self.rows[v]):
                i = index.get(w)
                if i is not None:
                    row |= 1 << i
            rows.append(row)
        return Graph._raw(len(keep), tuple(rows))

    def disjoint_union(self, other: "Graph") -> "Graph":
        n = self.n + other.n
        if n > MAX_VERTICES:
            raise CapacityError(f"union would have {n} > {MAX_VERTICES} vertices")
        shift = self.n
        return Graph._raw(n, self.rows + tuple(r << shift for r in other.rows))

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise VertexError("relabeling must be a permutation of 0..n-1")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            new = 0
            for w in _bits(row):
                new |= 1 << perm[w]
            rows[perm[v]] = new
        return Graph._raw(self.n, tuple(rows))

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1


def _contract_rows(rows: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    bu, bv = 1 << u, 1 << v
    merged = (rows[u] | rows[v]) & ~bu & ~bv
    out = []
    for w, row in enumerate(rows):
        if w == v:
            continue
        if w == u:
            row = merged
        elif row & bv:
            row = (row & ~bv) | bu
        out.append(_drop_bit(row, v))
    return tuple(out)


# function-style aliases


def add_edge(g: Graph, u: int, v: int) -> Graph:
    return g.add_edge(u, v)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    return g.delete_edge(u, v)


def contract(g: Graph, u: int, v: int) -> Graph:
    return g.contract(u, v)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    return g1.disjoint_union(g2)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    return g.induced_subgraph(vertices)


def complement(g: Graph) -> Graph:
    return g.complement()


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def components(g: Graph) -> list[int]:
    """Vertex masks of the connected components, ordered by least vertex."""
    rows = g.rows
    remaining = (1 << g.n) - 1
    out = []
    while remaining:
        low = remaining & -remaining
        comp = frontier = low
        while frontier:
            nxt = 0
            for w in _bits(frontier):
                nxt |= rows[w]
            frontier = nxt & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def bits(mask: int) -> list[int]:
    return list(_bits(mask))
