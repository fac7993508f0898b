"""Constructors for the named extremal families.

Vertex order inside every (X, Y, Z) construction: X first, then Y, then Z.
Y-indices inside a :class:`Signature` are 0-based positions in Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .colorings import chromatic_number
from .connectivity import is_connected
from .graph import Graph, GraphError


class FamilyError(GraphError):
    """Construction parameters violate the family's defining conditions."""


@dataclass(frozen=True)
class Signature:
    """Y-neighbourhoods of the attaching X-vertices, as subsets of range(delta)."""

    delta: int
    sets: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, delta: int, sets: Iterable[Iterable[int]]) -> "Signature":
        fs = tuple(frozenset(s) for s in sets)
        for s in fs:
            if any(not 0 <= y < delta for y in s):
                raise FamilyError(f"signature set {sorted(s)} leaves range({delta})")
        return cls(delta, fs)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]


# -- building blocks ---------------------------------------------------------


def make_clique(n: int) -> Graph:
    if n < 1:
        raise FamilyError("clique needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_path(n: int) -> Graph:
    if n < 1:
        raise FamilyError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise FamilyError("both parts need at least one vertex")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def make_G_nk(n: int, k: int) -> Graph:
    """K_k on 0..k-1 plus an ear 0 - k - k+1 - ... - n-1 - 1."""
    if k < 3:
        raise FamilyError("G_{n,k} needs k >= 3")
    if n < k:
        raise FamilyError(f"G_{{n,k}} needs n >= k, got n={n}, k={k}")
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    if n > k:
        path = [0] + list(range(k, n)) + [1]
        edges += list(zip(path, path[1:]))
    return Graph.from_edges(n, edges)


# -- (X, Y, Z) constructions -------------------------------------------------


def _xyz_graph(n, clique, y_start, delta, attach, extra_edges=()):
    """Clique on 0..clique-1, Y = y_start.., Z after Y and complete to Y.

    ``attach`` maps an X-vertex to its set of Y positions.
    """
    z_start = y_start + delta
    if z_start >= n:
        raise FamilyError(f"n = {n} leaves Z empty (need n > {z_start})")
    edges = [(i, j) for i in range(clique) for j in range(i + 1, clique)]
    edges += list(extra_edges)
    for x, ys in attach.items():
        edges += [(x, y_start + y) for y in sorted(ys)]
    edges += [(y_start + y, z) for y in range(delta) for z in range(z_start, n)]
    return Graph.from_edges(n, edges)


def validate_nkd(g: Graph, k: int, delta: int, what: str = "graph") -> None:
    """Raise :class:`FamilyError` unless ``g`` is an (n, k, delta)-graph."""
    if not is_connected(g):
        raise FamilyError(f"{what} is not connected")
    md = g.min_degree()
    if md != delta:
        raise FamilyError(f"{what} has minimum degree {md}, expected {delta} (n too small?)")
    chi = chromatic_number(g)
    if chi != k:
        raise FamilyError(f"{what} has chromatic number {chi}, expected {k}")


def make_G1(n: int, k: int, delta: int) -> Graph:
    """X = K_{k-1}, Y independent and complete to X and Z, Z independent."""
    if k < 4 or delta < 3:
        raise FamilyError("G1 needs k >= 4 and delta >= 3")
    if n < k - 1 + delta + 1:
        raise FamilyError(f"G1 needs n >= k + delta, got n={n}")
    full = set(range(delta))
    g = _xyz_graph(n, k - 1, k - 1, delta, {x: full for x in range(k - 1)})
    validate_nkd(g, k, delta, "G1")
    return g


def default_signature(type_: int, k: int, delta: int) -> Signature:
    """A signature attaining the maximum second-order term of the given type."""
    if type_ == 1:
        if k - 1 >= delta:
            return Signature.of(delta, [{0}] * (k - 1))
        w = delta - k + 1
        return Signature.of(delta, [{0, *range(i + 1, i + 1 + w)} for i in range(k - 1)])
    if type_ == 2:
        if k - 1 > delta:
            raise FamilyError("Type 2 needs k - 1 <= delta")
        size = max(k - 2, delta - k + 2)
        extra = set(range(k - 1, k - 1 + size - (k - 2)))
        return Signature.of(delta, [(set(range(k - 1)) - {i}) | extra for i in range(k - 1)])
    if type_ == 3:
        return Signature.of(delta, [{0}])
    if type_ == 4:
        return Signature.of(delta, [set(range(1, delta))])
    raise FamilyError(f"unknown type {type_}")


def check_type_conditions(type_: int, k: int, delta: int, sig: Signature) -> None:
    if sig.delta != delta:
        raise FamilyError(f"signature is over |Y| = {sig.delta}, expected {delta}")
    sets = sig.sets
    if type_ in (1, 2):
        if len(sets) != k - 1:
            raise FamilyError(f"Type {type_} signature needs k - 1 = {k - 1} sets")
        if any(not s for s in sets):
            raise FamilyError(f"Type {type_}: every X-vertex needs a Y-neighbour")
    if type_ == 1:
        if not frozenset.intersection(*sets):
            raise FamilyError("Type 1: no vertex of Y is complete to X")
    elif type_ == 2:
        if k - 1 > delta:
            raise FamilyError("Type 2 is only possible when k - 1 <= delta")
        for i in range(k - 1):
            others = [s for j, s in enumerate(sets) if j != i]
            common = frozenset.intersection(*others) if others else frozenset(range(delta))
            if not common - sets[i]:
                raise FamilyError(f"Type 2: no vertex of Y has X-neighbourhood X - {{x{i}}}")
    elif type_ in (3, 4):
        if k - 1 < delta:
            raise FamilyError(f"Type {type_} is only possible when k - 1 >= delta")
        if len(sets) != 1:
            raise FamilyError(f"Type {type_} signature is a single set")
        if type_ == 3 and not sets[0]:
            raise FamilyError("Type 3: the attaching vertex needs a Y-neighbour")
        if type_ == 4 and len(sets[0]) < delta - 1:
            raise FamilyError("Type 4: the leaf needs at least delta - 1 neighbours in Y")
    else:
        raise FamilyError(f"unknown type {type_}")


def make_type_graph(type_: int, n: int, k: int, delta: int, sig: Signature | None = None) -> Graph:
    """Build a Type 1-4 graph with the given signature, then validate it.

    Types 1/2: X = K_{k-1} on 0..k-2.  Type 3: X = K_k on 0..k-1 with vertex
    0 attaching.  Type 4: K_k on 0..k-1 plus leaf k hanging from vertex 0;
    the leaf attaches to Y.
    """
    if type_ == 2 and k - 1 > delta:
        raise FamilyError("Type 2 needs k - 1 <= delta")
    if k < 4 or delta < 3:
        raise FamilyError("types are defined for k >= 4 and delta >= 3")
    if sig is None:
        sig = default_signature(type_, k, delta)
    check_type_conditions(type_, k, delta, sig)
    if type_ in (1, 2):
        g = _xyz_graph(n, k - 1, k - 1, delta, dict(enumerate(sig.sets)))
    elif type_ == 3:
        g = _xyz_graph(n, k, k, delta, {0: sig.sets[0]})
    else:
        g = _xyz_graph(n, k, k + 1, delta, {k: sig.sets[0]}, [(0, k)])
    validate_nkd(g, k, delta, f"Type {type_} graph")
    return g


def x_size(type_: int, k: int) -> int:
    return {1: k - 1, 2: k - 1, 3: k, 4: k + 1}[type_]


def make_Gstar_mindeg(n: int, k: int, delta: int) -> Graph:
    """K_k and K_{delta, n-k-delta}, one bipartite edge removed, its big-side
    endpoint joined to the clique.  Built in Type 4 layout: the rejoined
    endpoint is the leaf k, the delta-side is Y, and y0 is the vertex that
    lost its edge."""
    if not k - 1 >= delta >= 3:
        raise FamilyError("G-star (minimum degree) needs k - 1 >= delta >= 3")
    if n - k - delta - 1 < delta:
        raise FamilyError(f"n = {n} too small: need n >= k + 2*delta + 1")
    return make_type_graph(4, n, k, delta, Signature.of(delta, [range(1, delta)]))


def lconn_signature(k: int, l: int) -> tuple[str, Signature]:
    """Signature of the extremal Type 1 construction for the given range."""
    if k < 4 or l < 3:
        raise FamilyError("needs k >= 4 and l >= 3")
    if k >= l:
        # y0 complete to X, y1..y_{l-1} matched into X
        sets = [{0} | ({i + 1} if i + 1 <= l - 1 else set()) for i in range(k - 1)]
        return "b", Signature.of(l, sets)
    if l >= (k - 2) * (k - 1) + 1:
        # x_i misses its own block of k-2 vertices
        sets = [set(range(l)) - set(range(i * (k - 2), (i + 1) * (k - 2))) for i in range(k - 1)]
        return "d", Signature.of(l, sets)
    if l < 2 * k - 4:
        # candidate from the existence argument; uniqueness not claimed
        w = l - k + 1
        sets = [{0, *range(i + 1, i + 1 + w)} for i in range(k - 1)]
        return "c", Signature.of(l, sets)
    raise FamilyError(
        f"no construction for 2k-4 <= l <= (k-1)(k-2) (k={k}, l={l}): structure unresolved"
    )


def make_Gstar_lconn(n: int, k: int, l: int, check_flow: bool = False) -> Graph:
    """Extremal Type 1 graph for k-chromatic l-connected graphs."""
    from .decomposition import signature_l_connected

    _, sig = lconn_signature(k, l)
    g = _xyz_graph(n, k - 1, k - 1, l, dict(enumerate(sig.sets)))
    validate_nkd(g, k, l, "G-star (l-connected)")
    ok, witness = signature_l_connected(sig, k - 1, l)
    if not ok:
        raise FamilyError(f"construction not {l}-connected: violating set {witness}")
    if check_flow:
        from .connectivity import is_l_connected

        if not is_l_connected(g, l):
            raise FamilyError("flow check disagrees with the bipartite criterion")
    return g


def k4_lconn_signature(l: int) -> Signature:
    if l == 5:
        return Signature.of(5, [{1, 2, 3}, {0, 2, 4}, {0, 1, 3}])
    if l == 6:
        return Signature.of(6, [set(range(6)) - {i, 5 - i} for i in range(3)])
    raise FamilyError("the k = 4 Type 2 constructions exist for l in {5, 6} only")


def make_k4_lconn_graph(l: int, n: int) -> Graph:
    """Type 2 extremal graphs for k = 4 and l = 5, 6."""
    from .decomposition import signature_l_connected

    sig = k4_lconn_signature(l)
    check_type_conditions(2, 4, l, sig)
    g = _xyz_graph(n, 3, 3, l, dict(enumerate(sig.sets)))
    validate_nkd(g, 4, l, f"l = {l} Type 2 graph")
    ok, witness = signature_l_connected(sig, 3, l)
    if not ok:
        raise FamilyError(f"construction not {l}-connected: violating set {witness}")
    return g


def signature_from_graph(g: Graph, x: Sequence[int], y: Sequence[int]) -> Signature:
    ypos = {v: i for i, v in enumerate(y)}
    return Signature.of(len(y), [{ypos[w] for w in g.neighbors(v) if w in ypos} for v in x])
