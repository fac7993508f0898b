"""Exact canonical labeling by partition refinement and individualization.

The search tree is the usual one: refine the ordered partition to an
equitable one, individualize a vertex of the first non-singleton cell,
refine again, and so on until the partition is discrete.  Every leaf gives a
relabeled adjacency matrix and the lexicographically largest one is the
certificate.  Two pruning rules keep symmetric graphs cheap:

* twins (``N(u) - {v} == N(v) - {u}``) in the target cell are swapped by an
  automorphism, so only one of them is expanded;
* automorphisms discovered at equal leaves prune siblings in the same orbit
  of the pointwise stabilizer of the current path.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, _bits


@dataclass(frozen=True)
class CanonicalForm:
    """``certificate`` is equal for two graphs iff they are isomorphic.

    ``relabeling[v]`` is the canonical label of vertex ``v``; applying it
    with :meth:`Graph.relabel` yields the canonical representative.
    """

    certificate: bytes
    relabeling: tuple[int, ...]


def _refine(rows, cells, queue):
    n_cells = len(cells)
    n = sum(len(c) for c in cells)
    while queue and n_cells < n:
        w = queue.popleft()
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups = {}
            for v in cell:
                c = (rows[v] & w).bit_count()
                g = groups.get(c)
                if g is None:
                    groups[c] = [v]
                else:
                    g.append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            for c in sorted(groups):
                part = groups[c]
                out.append(part)
                mask = 0
                for v in part:
                    mask |= 1 << v
                queue.append(mask)
            n_cells += len(groups) - 1
        cells = out
    return cells


def _leaf(rows, order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = []
    for v in order:
        r = 0
        for w in _bits(rows[v]):
            r |= 1 << pos[w]
        cert.append(r)
    return tuple(cert)


def _orbit(v, autos):
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for a in autos:
            y = a[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def canonical_labeling(g: Graph, partition: Sequence[Sequence[int]] | None = None):
    """Return ``(cert_rows, order, automorphisms)``.

    ``order[i]`` is the vertex placed at canonical position ``i``.  An
    optional ordered ``partition`` colours the vertices; only
    colour-preserving relabelings are considered.
    """
    n = g.n
    rows = g.rows
    if n == 0:
        return (), (), []
    if partition is None:
        cells = [list(range(n))]
    else:
        cells = [sorted(c) for c in partition if c]
        if sorted(v for c in cells for v in c) != list(range(n)):
            raise ValueError("partition must cover every vertex exactly once")
    start_queue = deque()
    for c in cells:
        mask = 0
        for v in c:
            mask |= 1 << v
        start_queue.append(mask)
    cells = _refine(rows, cells, start_queue)

    best = [None, None]
    autos: list[tuple[int, ...]] = []

    def visit(cells, path):
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = _leaf(rows, order)
            if best[0] is None or cert > best[0]:
                best[0] = cert
                best[1] = order
            elif cert == best[0]:
                # automorphism sending best leaf to this leaf
                a = [0] * n
                for x, y in zip(best[1], order):
                    a[x] = y
                a = tuple(a)
                if a not in autos:
                    autos.append(a)
            return
        t = 0
        while len(cells[t]) == 1:
            t += 1
        cell = cells[t]
        tried = []
        for v in cell:
            skip = False
            rv = rows[v]
            for u in tried:
                if rv & ~(1 << u) == rows[u] & ~(1 << v):
                    skip = True
                    break
            if not skip and autos and tried:
                usable = [a for a in autos if all(a[p] == p for p in path)]
                if usable:
                    orb = _orbit(v, usable)
                    skip = any(u in orb for u in tried)
            if skip:
                continue
            rest = [u for u in cell if u != v]
            new_cells = cells[:t] + [[v], rest] + cells[t + 1:]
            visit(_refine(rows, new_cells, deque([1 << v])), path + [v])
            tried.append(v)

    visit(cells, [])
    return best[0], tuple(best[1]), autos


def canonical_form(g: Graph, partition: Sequence[Sequence[int]] | None = None) -> CanonicalForm:
    cert_rows, order, _ = canonical_labeling(g, partition)
    n = g.n
    width = max(1, (n + 7) // 8)
    head = bytes([n])
    if partition is not None:
        sizes = [len(c) for c in partition if c]
        head += bytes([len(sizes)]) + bytes(sizes)
    body = b"".join(r.to_bytes(width, "big") for r in cert_rows)
    relabeling = [0] * n
    for i, v in enumerate(order):
        relabeling[v] = i
    return CanonicalForm(head + body, tuple(relabeling))


def certificate(g: Graph) -> bytes:
    return canonical_form(g).certificate


def canonical_graph(g: Graph) -> Graph:
    cf = canonical_form(g)
    return g.relabel(cf.relabeling)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return certificate(g) == certificate(h)


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    """Automorphisms found during the search plus the twin transpositions.

    Not guaranteed to generate the full group; use :func:`is_asymmetric` for
    the exact trivial-group test.
    """
    _, _, autos = canonical_labeling(g)
    out = list(autos)
    rows = g.rows
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if rows[u] & ~(1 << v) == rows[v] & ~(1 << u):
                p = list(range(g.n))
                p[u], p[v] = v, u
                out.append(tuple(p))
    return out


def is_asymmetric(g: Graph) -> bool:
    """True iff the automorphism group is trivial.

    If a nontrivial automorphism exists then either a twin pair exists or the
    image of the best leaf is a second, explored leaf with the same
    certificate, which the search records.
    """
    return not automorphism_generators(g)


# -- backend selection for hot paths -------------------------------------------

try:  # optional accelerator, see the ``fast`` extra
    import pynauty as _pynauty
except ImportError:  # pragma: no cover - depends on environment
    _pynauty = None


def backend_name() -> str:
    """``nauty`` when pynauty is importable and not disabled, else ``inhouse``.

    ``TOMESCU_CANON=inhouse`` forces the pure-Python search.
    """
    if os.environ.get("TOMESCU_CANON", "auto") == "inhouse" or _pynauty is None:
        return "inhouse"
    return "nauty"


def nauty_graph(n, rows, colouring=None):
    adj = {v: list(_bits(rows[v] >> v + 1 << v + 1)) for v in range(n)}
    return _pynauty.Graph(n, adjacency_dict=adj, vertex_coloring=colouring or [])


def canonical_rows(g: Graph) -> tuple[int, ...]:
    """Adjacency rows of a canonical representative of ``g``'s class.

    Equal for two graphs iff they are isomorphic, for a fixed backend.
    """
    if backend_name() == "inhouse" or g.n < 2:
        return canonical_labeling(g)[0]
    order = _pynauty.canon_label(nauty_graph(g.n, g.rows))
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    out = [0] * g.n
    for v, row in enumerate(g.rows):
        r = 0
        for w in _bits(row):
            r |= 1 << pos[w]
        out[pos[v]] = r
    return tuple(out)
