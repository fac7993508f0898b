"""graph6 and sparse6 serialization (nauty ``formats.txt`` conventions)."""

from __future__ import annotations

from .graph import MAX_VERTICES, CapacityError, Graph, GraphError

GRAPH6_HEADER = b">>graph6<<"
SPARSE6_HEADER = b">>sparse6<<"


class GraphFormatError(GraphError):
    """Malformed graph6/sparse6 input; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])


def _decode_n(data: bytes, start: int) -> tuple[int, int]:
    """Return ``(n, position after the size field)``."""

    def sextet(i):
        if i >= len(data):
            raise GraphFormatError("truncated vertex count", i)
        c = data[i]
        if not 63 <= c <= 126:
            raise GraphFormatError(f"invalid character {chr(c)!r}", i)
        return c - 63

    first = sextet(start)
    if first < 63:
        return first, start + 1
    if start + 1 < len(data) and data[start + 1] == 126:
        n = 0
        for i in range(start + 2, start + 8):
            n = n << 6 | sextet(i)
        return n, start + 8
    n = 0
    for i in range(start + 1, start + 4):
        n = n << 6 | sextet(i)
    return n, start + 4


def _pack(bits: list[int]) -> bytes:
    out = bytearray()
    for i in range(0, len(bits), 6):
        chunk = bits[i:i + 6]
        chunk += [0] * (6 - len(chunk))
        v = 0
        for b in chunk:
            v = v << 1 | b
        out.append(63 + v)
    return bytes(out)


def _as_bytes(text) -> bytes:
    if isinstance(text, str):
        text = text.encode("ascii")
    return bytes(text).strip()


def to_graph6(g: Graph, header: bool = False) -> str:
    bits = []
    rows = g.rows
    for j in range(1, g.n):
        for i in range(j):
            bits.append(rows[i] >> j & 1)
    out = _encode_n(g.n) + _pack(bits)
    return ((GRAPH6_HEADER if header else b"") + out).decode("ascii")


def from_graph6(text) -> Graph:
    data = _as_bytes(text)
    pos = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER) else 0
    n, pos = _decode_n(data, pos)
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 graph has {n} > {MAX_VERTICES} vertices")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise GraphFormatError(
            f"expected {need} data bytes for n={n}, found {len(data) - pos}",
            min(len(data), pos + need),
        )
    rows = [0] * n
    i, j = 0, 1
    for off in range(pos, pos + need):
        c = data[off]
        if not 63 <= c <= 126:
            raise GraphFormatError(f"invalid character {chr(c)!r}", off)
        v = c - 63
        for s in range(5, -1, -1):
            if j >= n:
                if v >> s & 1:
                    raise GraphFormatError("nonzero padding bits", off)
                continue
            if v >> s & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph._raw(n, tuple(rows))


def _sparse6_k(n: int) -> int:
    k = 1
    while 1 << k < n:
        k += 1
    return k


def to_sparse6(g: Graph, header: bool = False) -> str:
    n = g.n
    k = _sparse6_k(n)

    def enc(x):
        return [x >> s & 1 for s in range(k - 1, -1, -1)]

    bits: list[int] = []
    cur = 0
    for v, u in sorted((v, u) for u, v in g.edges()):
        if v == cur:
            bits.append(0)
            bits += enc(u)
        elif v == cur + 1:
            cur = v
            bits.append(1)
            bits += enc(u)
        else:
            cur = v
            bits.append(1)
            bits += enc(v)
            bits.append(0)
            bits += enc(u)
    if k < 6 and n == 1 << k and (-len(bits)) % 6 >= k and cur < n - 1:
        bits.append(0)
    bits += [1] * ((-len(bits)) % 6)
    out = b":" + _encode_n(n) + _pack(bits)
    return ((SPARSE6_HEADER if header else b"") + out).decode("ascii")


def from_sparse6(text) -> Graph:
    data = _as_bytes(text)
    pos = len(SPARSE6_HEADER) if data.startswith(SPARSE6_HEADER) else 0
    if pos >= len(data) or data[pos] != ord(":"):
        raise GraphFormatError("sparse6 data must start with ':'", pos)
    n, pos = _decode_n(data, pos + 1)
    if n > MAX_VERTICES:
        raise CapacityError(f"sparse6 graph has {n} > {MAX_VERTICES} vertices")
    k = _sparse6_k(n)
    bits = []
    for off in range(pos, len(data)):
        c = data[off]
        if not 63 <= c <= 126:
            raise GraphFormatError(f"invalid character {chr(c)!r}", off)
        v = c - 63
        bits += [v >> s & 1 for s in range(5, -1, -1)]
    rows = [0] * n
    v = 0
    i = 0
    while i + 1 + k <= len(bits):
        b = bits[i]
        x = 0
        for t in bits[i + 1:i + 1 + k]:
            x = x << 1 | t
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
            continue
        if x == v:
            raise GraphFormatError("sparse6 loop not allowed in a simple graph", pos + (i - 1 - k) // 6)
        if rows[x] >> v & 1:
            raise GraphFormatError("sparse6 multi-edge not allowed in a simple graph", pos + (i - 1 - k) // 6)
        rows[x] |= 1 << v
        rows[v] |= 1 << x
    return Graph._raw(n, tuple(rows))


def parse(text) -> Graph:
    """Parse either format, dispatching on the leading ``:`` of sparse6."""
    data = _as_bytes(text)
    if data.startswith(SPARSE6_HEADER) or data.startswith(b":"):
        return from_sparse6(data)
    return from_graph6(data)
