"""Exact coloring counts.

Two independent routes are kept on purpose:

* :func:`count_colorings_bruteforce` walks all proper assignments in a fixed
  vertex order.  It is the oracle and shares no code with the engine.
* :func:`chromatic_polynomial` / :func:`count_colorings` run
  deletion-contraction (or addition-contraction on dense graphs) with
  structural reductions and a memo keyed by canonical form.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from functools import lru_cache

from .canon import canonical_rows
from .connectivity import PreconditionError, block_decomposition
from .graph import Graph, GraphError, _bits, components

ORACLE_CAP = 16
MEMO_MIN_N = 6
MEMO_MAX_N = int(os.environ.get("TOMESCU_MEMO_MAX_N", "64"))
TWIN_PIVOT = os.environ.get("TOMESCU_TWIN_PIVOT", "1") != "0"
CACHE_SIZE = int(os.environ.get("TOMESCU_CACHE_SIZE", "200000"))

# deletion-contraction depth is bounded by the edge count, which can pass
# the default limit on dense 64-vertex inputs
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class OracleCapError(GraphError):
    pass


# -- polynomial value type ---------------------------------------------------


@dataclass(frozen=True)
class ChromaticPolynomial:
    """``coeffs[i]`` is the coefficient of ``x**i``."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                terms.append(f"{c}*x^{i}" if i else str(c))
        return " + ".join(terms) or "0"


def evaluate(p: ChromaticPolynomial, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


class _PolyRing:
    """Coefficient tuples, lowest degree first."""

    one = (1,)
    x = (0, 1)
    xm1 = (-1, 1)

    @staticmethod
    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return tuple(out)

    @staticmethod
    def add(a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, bi in enumerate(b):
            out[i] += bi
        return _trim(out)

    @staticmethod
    def sub(a, b):
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, bi in enumerate(b):
            out[i] -= bi
        return _trim(out)

    @staticmethod
    def div_x(a, times=1):
        if any(a[:times]):
            raise ArithmeticError("polynomial not divisible by x")
        return a[times:]

    @staticmethod
    def power(a, e):
        out = (1,)
        for _ in range(e):
            out = _PolyRing.mul(out, a)
        return out

    @staticmethod
    def shift(d):
        return (-d, 1)

    def falling(self, n):
        out = (1,)
        for i in range(n):
            out = self.mul(out, (-i, 1))
        return out

    def tree(self, n):
        return self.mul(self.x, self.power(self.xm1, n - 1))

    def cycle(self, n):
        sign = 1 if n % 2 == 0 else -1
        return self.add(self.power(self.xm1, n), tuple(sign * c for c in self.xm1))


class _IntRing:
    """The same algebra evaluated at a fixed integer ``k``."""

    def __init__(self, k):
        self.k = k
        self.one = 1
        self.x = k
        self.xm1 = k - 1

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    def div_x(self, a, times=1):
        if self.k == 0:
            raise ZeroDivisionError("block product undefined at k = 0")
        d = self.k ** times
        q, r = divmod(a, d)
        if r:
            raise ArithmeticError("count not divisible by k")
        return q

    def shift(self, d):
        return self.k - d

    def falling(self, n):
        out = 1
        for i in range(n):
            out *= self.k - i
        return out

    def tree(self, n):
        return self.k * (self.k - 1) ** (n - 1)

    def cycle(self, n):
        return (self.k - 1) ** n + (-1) ** n * (self.k - 1)


_POLY = _PolyRing()


# -- engine ------------------------------------------------------------------


def _subrows(rows, mask):
    """Rows of the subgraph induced by ``mask``, relabeled in increasing order."""
    keep = list(_bits(mask))
    index = {v: i for i, v in enumerate(keep)}
    out = []
    for v in keep:
        r = 0
        for w in _bits(rows[v] & mask):
            r |= 1 << index[w]
        out.append(r)
    return len(keep), tuple(out)


def _simplicial(rows, degs):
    for v in sorted(range(len(rows)), key=degs.__getitem__):
        nb = rows[v]
        if all((rows[w] | (1 << w)) & nb == nb for w in _bits(nb)):
            return v
    return -1


def _solve(ring, n, rows, memo, fresh=True):
    if n == 0:
        return ring.one
    if n == 1:
        return ring.x
    comps = components(Graph._raw(n, rows))
    if len(comps) > 1:
        acc = ring.one
        for c in comps:
            acc = ring.mul(acc, _solve(ring, *_subrows(rows, c), memo))
        return acc
    degs = [r.bit_count() for r in rows]
    m = sum(degs) // 2
    if m == n * (n - 1) // 2:
        return ring.falling(n)
    if m == n - 1:
        return ring.tree(n)
    if m == n and max(degs) == 2:
        return ring.cycle(n)
    v = _simplicial(rows, degs)
    if v >= 0:
        # N(v) is a clique of size d: P(G) = (x - d) P(G - v); d = 1 is a pendant
        rest = ((1 << n) - 1) & ~(1 << v)
        return ring.mul(ring.shift(degs[v]), _solve(ring, *_subrows(rows, rest), memo))
    bd = block_decomposition(Graph._raw(n, rows))
    if len(bd.blocks) > 1:
        acc = ring.one
        for b in bd.blocks:
            mask = 0
            for v in b:
                mask |= 1 << v
            acc = ring.mul(acc, _solve(ring, *_subrows(rows, mask), memo))
        return ring.div_x(acc, len(bd.blocks) - 1)
    if memo is not None and MEMO_MIN_N <= n <= MEMO_MAX_N:
        cert_rows = canonical_rows(Graph._raw(n, rows))
        return memo(n, cert_rows, fresh)
    return _branch(ring, n, rows, degs, m, memo, fresh)


def _false_twins(rows):
    """Smallest nonadjacent pair with equal neighbourhoods, or None."""
    first = {}
    for v, r in enumerate(rows):
        u = first.get(r)
        if u is not None:
            return u, v
        first[r] = v
    return None


def _branch(ring, n, rows, degs, m, memo, fresh):
    """One deletion/addition-contraction step.

    ``fresh`` is False below a deletion at the current vertex count.  Twin
    additions are only taken while fresh, so at fixed n the edge count first
    only rises and then only falls, which rules out cycles; contraction
    lowers n and starts fresh again.
    """
    full = (1 << n) - 1
    if TWIN_PIVOT and fresh:
        pair = _false_twins(rows)
        if pair is not None:
            # merging equal neighbourhoods keeps the twin class symmetric,
            # so the memo sees few distinct subproblems
            u, v = pair
            added = list(rows)
            added[u] |= 1 << v
            added[v] |= 1 << u
            a = _solve(ring, n, tuple(added), memo, True)
            b = _solve(ring, n - 1, Graph._raw(n, rows).contract(u, v).rows, memo)
            return ring.add(a, b)
    if 4 * m > n * (n - 1):
        # dense: P(G) = P(G + uv) + P(G / uv) for a non-edge uv
        u = max((v for v in range(n) if degs[v] < n - 1), key=lambda v: (degs[v], -v))
        v = next(_bits(full & ~rows[u] & ~(1 << u)))
        added = list(rows)
        added[u] |= 1 << v
        added[v] |= 1 << u
        a = _solve(ring, n, tuple(added), memo, fresh)
        b = _solve(ring, n - 1, Graph._raw(n, rows).contract(u, v).rows, memo)
        return ring.add(a, b)
    # sparse: P(G) = P(G - uv) - P(G / uv) for an edge uv
    u = max(range(n), key=lambda v: (degs[v], -v))
    v = next(_bits(rows[u]))
    deleted = list(rows)
    deleted[u] &= ~(1 << v)
    deleted[v] &= ~(1 << u)
    a = _solve(ring, n, tuple(deleted), memo, False)
    b = _solve(ring, n - 1, Graph._raw(n, rows).contract(u, v).rows, memo)
    return ring.sub(a, b)


def _branch_canonical(ring, memo, n, rows, fresh):
    degs = [r.bit_count() for r in rows]
    return _branch(ring, n, rows, degs, sum(degs) // 2, memo, fresh)


@lru_cache(maxsize=CACHE_SIZE)
def _poly_memo(n, rows, fresh):
    return _branch_canonical(_POLY, _poly_memo, n, rows, fresh)


_int_memos: dict[int, object] = {}


def _int_memo(k):
    f = _int_memos.get(k)
    if f is None:
        ring = _IntRing(k)

        @lru_cache(maxsize=CACHE_SIZE)
        def f(n, rows, fresh):
            return _branch_canonical(ring, f, n, rows, fresh)

        _int_memos[k] = f
    return f


def chromatic_polynomial(g: Graph, memo: bool = True) -> ChromaticPolynomial:
    coeffs = _solve(_POLY, g.n, g.rows, _poly_memo if memo else None)
    return ChromaticPolynomial(tuple(coeffs))


def count_colorings(g: Graph, k: int, memo: bool = True) -> int:
    """P_G(k) by deletion-contraction over exact integers."""
    if k < 0:
        return evaluate(chromatic_polynomial(g, memo), k)
    if g.n and k == 0:
        return 0
    return _solve(_IntRing(k), g.n, g.rows, _int_memo(k) if memo else None)


def cache_info() -> dict:
    """Hit/miss statistics of the per-process memo tables."""
    out = {"poly": _poly_memo.cache_info()._asdict()}
    for k, f in sorted(_int_memos.items()):
        out[f"k={k}"] = f.cache_info()._asdict()
    return out


def cache_clear() -> None:
    _poly_memo.cache_clear()
    _int_memos.clear()


# -- oracle ------------------------------------------------------------------


def count_colorings_bruteforce(g: Graph, k: int, cap: int = ORACLE_CAP) -> int:
    """Count proper k-colorings by backtracking in vertex order 0..n-1."""
    n = g.n
    if k < 0:
        raise ValueError("k must be nonnegative")
    if n > cap:
        raise OracleCapError(f"oracle cap {cap} < n = {n}")
    if n == 0:
        return 1
    # earlier neighbours of each vertex
    back = [[w for w in range(v) if g.rows[v] >> w & 1] for v in range(n)]
    colour = [0] * n

    def rec(v):
        if v == n - 1:
            used = {colour[w] for w in back[v]}
            return k - len(used)
        total = 0
        for c in range(k):
            if all(colour[w] != c for w in back[v]):
                colour[v] = c
                total += rec(v + 1)
        return total

    return rec(0)


# -- chromatic number and criticality ----------------------------------------


def is_k_colorable(g: Graph, k: int) -> bool:
    """Backtracking with most-constrained-vertex choice and first-use colour symmetry."""
    n = g.n
    if n == 0:
        return True
    if k <= 0:
        return False
    rows = g.rows
    colour = [-1] * n
    forbid = [0] * n  # bitmask of colours used by neighbours

    def rec(done, used):
        if done == n:
            return True
        v = best = -1
        for w in range(n):
            if colour[w] < 0:
                s = forbid[w].bit_count()
                if s > best:
                    v, best = w, s
        for c in range(min(used + 1, k)):
            if forbid[v] >> c & 1:
                continue
            colour[v] = c
            saved = []
            for w in _bits(rows[v]):
                saved.append(forbid[w])
                forbid[w] |= 1 << c
            if rec(done + 1, max(used, c + 1)):
                return True
            for w, f in zip(_bits(rows[v]), saved):
                forbid[w] = f
            colour[v] = -1
        return False

    return rec(0, 0)


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("chromatic number of the empty graph is undefined")
    if g.m == 0:
        return 1
    k = 2
    while not is_k_colorable(g, k):
        k += 1
    return k


def is_k_critical(g: Graph, k: int) -> bool:
    if g.n == 0 or chromatic_number(g) != k:
        return False
    return all(is_k_colorable(g.delete_edge(u, v), k - 1) for u, v in g.edges())


def equal_color_probability_exceeds(g: Graph, k: int, u: int, v: int) -> bool:
    """Whether Pr[c(u) = c(v)] >= 1/(k-1) for a uniform random k-coloring.

    Decided as ``(k-1) * P_{G/uv}(k) >= P_G(k)`` in exact integers.
    """
    if u == v:
        raise PreconditionError("u and v must differ")
    if chromatic_number(g) != k:
        raise PreconditionError(f"chromatic number is not {k}")
    if g.has_edge(u, v):
        return False
    return (k - 1) * count_colorings(g.contract(u, v), k) >= count_colorings(g, k)


def satisfies_property_Ck(g: Graph, k: int) -> bool:
    if chromatic_number(g) != k:
        raise PreconditionError(f"chromatic number is not {k}")
    total = count_colorings(g, k)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.rows[u] >> v & 1:
                if (k - 1) * count_colorings(g.contract(u, v), k) >= total:
                    return False
    return True

