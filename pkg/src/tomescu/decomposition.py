"""(X, Y, Z) decompositions, type classification, the P^(i) series and the
bipartite l-connectivity criterion for Type 1/2 graphs."""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .colorings import ORACLE_CAP, OracleCapError
from .families import Signature
from .graph import Graph, GraphError, _bits


class DecompositionError(GraphError):
    pass


@dataclass(frozen=True)
class XYZDecomposition:
    x_set: tuple[int, ...]
    y_set: tuple[int, ...]
    z_set: tuple[int, ...]
    delta: int
    type_tag: int | None = None
    signature: Signature | None = None


@dataclass(frozen=True)
class PSeries:
    """``terms[i-1]`` is P^(i): colorings of G[X u Y] with exactly i colours on Y."""

    terms: tuple[int, ...]
    z_size: int
    k: int

    def term(self, i: int) -> int:
        return self.terms[i - 1]

    def order_term(self, i: int) -> int:
        """P^(i) * (k - i)^|Z|."""
        return self.terms[i - 1] * (self.k - i) ** self.z_size

    def total(self) -> int:
        return sum(self.order_term(i) for i in range(1, self.k + 1))


def _mask(vs):
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def is_valid_decomposition(g: Graph, d: XYZDecomposition) -> bool:
    xs, ys, zs = _mask(d.x_set), _mask(d.y_set), _mask(d.z_set)
    if xs & ys or xs & zs or ys & zs or xs | ys | zs != g.vertex_mask():
        return False
    if len(d.y_set) != d.delta:
        return False
    rows = g.rows
    if any(rows[y] & ys for y in d.y_set):
        return False
    return all(rows[z] & (ys | zs) == ys and not rows[z] & xs for z in d.z_set)


def find_xyz_decomposition(g: Graph, delta: int) -> XYZDecomposition | None:
    """Decomposition with the largest Z.

    Candidate Y sets are neighbourhoods of degree-delta vertices; Z is every
    vertex whose neighbourhood is exactly Y.  With minimum degree delta this
    already moves every X-vertex whose neighbours all lie in Y into Z.  Ties
    go to the lexicographically least Y.
    """
    if g.n == 0 or g.min_degree() != delta:
        return None
    rows = g.rows
    best = None
    for y_mask in sorted({r for r in rows if r.bit_count() == delta}, key=lambda m: list(_bits(m))):
        if any(rows[y] & y_mask for y in _bits(y_mask)):
            continue
        z_mask = _mask(v for v in range(g.n) if rows[v] == y_mask)
        size = z_mask.bit_count()
        if best is None or size > best[0]:
            best = (size, y_mask, z_mask)
    if best is None:
        return None
    _, y_mask, z_mask = best
    x_mask = g.vertex_mask() & ~y_mask & ~z_mask
    xs, ys = tuple(_bits(x_mask)), tuple(_bits(y_mask))
    sig = Signature.of(delta, [{i for i, y in enumerate(ys) if rows[x] >> y & 1} for x in xs])
    return XYZDecomposition(xs, ys, tuple(_bits(z_mask)), delta, None, sig)


def _is_clique(rows, vs):
    m = _mask(vs)
    return all(rows[v] & m == m & ~(1 << v) for v in vs)


def matching_types(d: XYZDecomposition, g: Graph, k: int) -> list[int]:
    """Every type whose defining conditions (and range gates) hold."""
    rows = g.rows
    xs, ys = d.x_set, d.y_set
    x_mask, y_mask = _mask(xs), _mask(ys)
    delta = d.delta
    out = []
    if len(xs) == k - 1 and _is_clique(rows, xs):
        if any(rows[y] & x_mask == x_mask for y in ys):
            out.append(1)
        if k - 1 <= delta and all(
            any(rows[y] & x_mask == x_mask & ~(1 << x) for y in ys) for x in xs
        ):
            out.append(2)
    if k - 1 >= delta:
        touching = [x for x in xs if rows[x] & y_mask]
        if len(xs) == k and _is_clique(rows, xs) and len(touching) == 1:
            out.append(3)
        if len(xs) == k + 1 and len(touching) == 1:
            v = touching[0]
            rest = [x for x in xs if x != v]
            if (
                _is_clique(rows, rest)
                and (rows[v] & x_mask).bit_count() == 1
                and (rows[v] & y_mask).bit_count() >= delta - 1
            ):
                out.append(4)
    return out


def classify_type(d: XYZDecomposition, g: Graph, k: int) -> int | None:
    types = matching_types(d, g, k)
    return types[0] if types else None


def decompose(g: Graph, k: int, delta: int | None = None) -> XYZDecomposition | None:
    """Find the decomposition, classify it and attach the type signature."""
    if delta is None:
        delta = g.min_degree()
    d = find_xyz_decomposition(g, delta)
    if d is None:
        return None
    t = classify_type(d, g, k)
    sig = d.signature
    if t in (3, 4):
        sig = Signature.of(delta, [s for s in sig.sets if s])
    return replace(d, type_tag=t, signature=sig)


# -- P^(i) series ------------------------------------------------------------


def p_series(g: Graph, d: XYZDecomposition, k: int, cap: int = ORACLE_CAP) -> PSeries:
    """Bucket the k-colorings of G[X u Y] by the number of colours on Y.

    X is coloured by backtracking.  Y is independent, so for each colouring
    of X the number of ways to colour Y using exactly the colour set C
    follows from inclusion-exclusion over the subsets of C.
    """
    if not is_valid_decomposition(g, d):
        raise DecompositionError("not a valid (X, Y, Z) decomposition")
    xs, ys = d.x_set, d.y_set
    if len(xs) + len(ys) > cap:
        raise OracleCapError(f"|X u Y| = {len(xs) + len(ys)} exceeds cap {cap}")
    rows = g.rows
    xpos = {x: i for i, x in enumerate(xs)}
    x_back = [[xpos[w] for w in _bits(rows[x]) if w in xpos and xpos[w] < i] for i, x in enumerate(xs)]
    y_nbrs = [[xpos[w] for w in _bits(rows[y]) if w in xpos] for y in ys]
    n_sub = 1 << k
    popc = [c.bit_count() for c in range(n_sub)]
    # sign[D][C] handled by iterating supersets below
    terms = [0] * (k + 1)
    colour = [0] * len(xs)
    full = n_sub - 1

    def finish():
        allowed = []
        for nb in y_nbrs:
            used = 0
            for i in nb:
                used |= 1 << colour[i]
            allowed.append(full & ~used)
        # f(D) = prod |allowed_y & D|
        f = [0] * n_sub
        for dmask in range(n_sub):
            p = 1
            for a in allowed:
                p *= popc[a & dmask]
                if not p:
                    break
            f[dmask] = p
        # Mobius transform: exact(C) = sum_{D <= C} (-1)^{|C - D|} f(D)
        for b in range(k):
            bit = 1 << b
            for c in range(n_sub):
                if c & bit:
                    f[c] -= f[c ^ bit]
        for c in range(1, n_sub):
            if f[c]:
                terms[popc[c]] += f[c]

    def rec(i):
        if i == len(xs):
            finish()
            return
        for c in range(k):
            if all(colour[j] != c for j in x_back[i]):
                colour[i] = c
                rec(i + 1)

    rec(0)
    return PSeries(tuple(terms[1:]), len(d.z_set), k)


# -- bipartite l-connectivity criterion --------------------------------------


def signature_l_connected(sig: Signature, r: int, l: int):
    """Check both subset conditions for X of size r and Y = range(sig.delta).

    Returns ``(True, None)`` or ``(False, ("S", xs))`` / ``(False, ("T", ys))``
    with the first violating subset in size-then-lexicographic order.
    """
    sets = sig.sets
    if len(sets) != r:
        raise DecompositionError(f"signature has {len(sets)} sets, expected {r}")
    s_full = sig.delta
    for size in range(1, r):
        for S in combinations(range(r), size):
            ny = frozenset().union(*(sets[i] for i in S))
            if r - size + len(ny) < l:
                return False, ("S", S)
    for size in range(1, s_full + 1):
        for T in combinations(range(s_full), size):
            nx = {i for i in range(r) if sets[i] & set(T)}
            # removing N_X(T) and Y - T cuts T (with Z) off the rest of X;
            # for l = delta this is |T| <= |N_X(T)|
            if len(nx) != r and len(nx) + s_full - size < l:
                return False, ("T", T)
    return True, None


def bipartite_l_connectivity_check(d: XYZDecomposition, g: Graph, l: int, k: int | None = None):
    """Subset criterion for l-connectivity of a Type 1/2 graph.

    Returns ``(ok, witness)``; witness subsets are reported as vertex labels.
    """
    k = len(d.x_set) + 1 if k is None else k
    t = d.type_tag if d.type_tag is not None else classify_type(d, g, k)
    if t not in (1, 2):
        raise DecompositionError("the bipartite criterion applies to Type 1/2 decompositions")
    sig = Signature.of(d.delta, [{i for i, y in enumerate(d.y_set) if g.rows[x] >> y & 1} for x in d.x_set])
    ok, witness = signature_l_connected(sig, len(d.x_set), l)
    if ok:
        return True, None
    kind, idx = witness
    labels = d.x_set if kind == "S" else d.y_set
    return False, (kind, tuple(labels[i] for i in idx))


def hall_matching(sig: Signature, skip: frozenset[int] = frozenset()):
    """Maximum matching of Y - skip into X (X-vertex i sees sig.sets[i]).

    Returns a dict ``y -> x`` (Kuhn's augmenting paths).
    """
    adj = {y: [i for i, s in enumerate(sig.sets) if y in s] for y in range(sig.delta) if y not in skip}
    match_x: dict[int, int] = {}

    def augment(y, seen):
        for x in adj[y]:
            if x in seen:
                continue
            seen.add(x)
            if x not in match_x or augment(match_x[x], seen):
                match_x[x] = y
                return True
        return False

    for y in adj:
        augment(y, set())
    return {y: x for x, y in match_x.items()}
