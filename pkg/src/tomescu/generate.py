"""Isomorph-free generation of simple graphs by canonical vertex augmentation.

A child ``C`` of a parent ``P`` on ``n-1`` vertices is ``P`` plus a new
vertex ``v = n-1`` joined to a subset ``S``.  The child is kept when ``v``
lies in the orbit singled out by an isomorphism-invariant rule:

1. ``v`` has maximum degree in ``C``;
2. among those, it maximizes (sum of neighbour degrees, triangles at v);
3. remaining ties are broken by the rooted certificate ``R(C, u)`` (the
   canonical form of ``C`` with ``u`` coloured apart), largest wins.

``R(C, u) == R(C, w)`` exactly when an automorphism maps ``u`` to ``w``, so
the rule picks an orbit.  Two kept children of the same parent are
isomorphic iff their ``R(C, v)`` agree, and kept children of different
parents are never isomorphic, so deduplicating per parent suffices.
"""

from __future__ import annotations

from .canon import _pynauty, backend_name, canonical_form, nauty_graph
from .canon import is_asymmetric as _inhouse_asymmetric
from .graph import CapacityError, Graph, _bits

HARD_CAP = 10
OVERRIDE_CAP = 11


class InHouseBackend:
    name = "inhouse"

    @staticmethod
    def rooted(n, rows, u):
        others = [w for w in range(n) if w != u]
        return canonical_form(Graph._raw(n, rows), [others, [u]]).certificate

    @staticmethod
    def asymmetric(n, rows):
        return _inhouse_asymmetric(Graph._raw(n, rows))


class NautyBackend:
    name = "nauty"

    @staticmethod
    def rooted(n, rows, u):
        others = set(range(n))
        others.discard(u)
        return _pynauty.certificate(nauty_graph(n, rows, [others, {u}]))

    @staticmethod
    def asymmetric(n, rows):
        if n <= 1:
            return True
        return _pynauty.autgrp(nauty_graph(n, rows))[4] == n


def default_backend():
    return NautyBackend if backend_name() == "nauty" else InHouseBackend


def children(n_parent: int, rows: tuple[int, ...], backend=None):
    """Yield the kept children (as row tuples) of one parent."""
    backend = backend or default_backend()
    n = n_parent + 1
    v = n_parent
    bv = 1 << v
    degs = [r.bit_count() for r in rows]
    top = max(degs, default=0)
    top_mask = 0
    for w, d in enumerate(degs):
        if d == top:
            top_mask |= 1 << w
    asym = backend.asymmetric(n_parent, rows)
    seen = set()
    for s_mask in range(1 << n_parent):
        s = s_mask.bit_count()
        if s < top or (s == top and s_mask & top_mask):
            continue
        crows = tuple(r | bv if s_mask >> w & 1 else r for w, r in enumerate(rows)) + (s_mask,)
        # vertices tying with v on degree
        cands = [w for w in range(n_parent) if degs[w] + (s_mask >> w & 1) == s]
        key = None
        if cands:
            cdeg = [r.bit_count() for r in crows]

            def inv(u):
                r = crows[u]
                nd = sum(cdeg[w] for w in _bits(r))
                tri = sum((crows[w] & r).bit_count() for w in _bits(r))
                return nd, tri

            mine = inv(v)
            ties = []
            reject = False
            for w in cands:
                iw = inv(w)
                if iw > mine:
                    reject = True
                    break
                if iw == mine:
                    ties.append(w)
            if reject:
                continue
            if ties:
                key = backend.rooted(n, crows, v)
                if any(backend.rooted(n, crows, w) > key for w in ties):
                    continue
        if not asym:
            if key is None:
                key = backend.rooted(n, crows, v)
            if key in seen:
                continue
            seen.add(key)
        yield crows


def check_cap(n: int, allow_large: bool = False) -> None:
    cap = OVERRIDE_CAP if allow_large else HARD_CAP
    if n > cap:
        hint = "" if allow_large else " (pass allow_large for n = 11)"
        raise CapacityError(f"exhaustive generation capped at n <= {cap}{hint}")


def level(n: int, backend=None, allow_large: bool = False) -> list[tuple[int, ...]]:
    """All graphs on ``n`` vertices, one row tuple per isomorphism class."""
    check_cap(n, allow_large)
    if n < 1:
        raise ValueError("n must be at least 1")
    backend = backend or default_backend()
    cur = [(0,)]
    for size in range(1, n):
        cur = [c for p in cur for c in children(size, p, backend)]
    return cur


def enumerate_graphs(n: int, sink=None, backend=None, allow_large: bool = False) -> int:
    """Feed one representative per isomorphism class to ``sink``; return the count."""
    check_cap(n, allow_large)
    if n == 1:
        if sink is not None:
            sink(Graph(1))
        return 1
    backend = backend or default_backend()
    count = 0
    for p in level(n - 1, backend, allow_large):
        for c in children(n - 1, p, backend):
            count += 1
            if sink is not None:
                sink(Graph._raw(n, c))
    return count
