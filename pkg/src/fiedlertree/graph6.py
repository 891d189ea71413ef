"""graph6 encoding and decoding (the de-facto byte layout).

Header is ``chr(63 + n)`` for n < 63, or ``chr(126)`` followed by three
bytes carrying an 18-bit n for 63 <= n <= 258047.  The upper triangle of
the adjacency matrix is read column by column (x_{0,1}, x_{0,2}, x_{1,2},
x_{0,3}, ...), packed big-endian six bits per byte, each offset by 63.
"""

from __future__ import annotations

from .graph import Graph, GraphError

_MAX_N = 258047


def encode_graph6(g: Graph) -> str:
    if g.n > _MAX_N:
        raise GraphError(f"graph6 supports n <= {_MAX_N}, got {g.n}")
    n = g.n
    if n < 63:
        header = chr(63 + n)
    else:
        header = chr(126) + "".join(
            chr(63 + ((n >> shift) & 0x3F)) for shift in (12, 6, 0)
        )
    bits: list[int] = []
    adj = g.adj
    for j in range(1, n):
        row = set(adj[j])
        for i in range(j):
            bits.append(1 if i in row else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        word = 0
        for b in bits[k : k + 6]:
            word = (word << 1) | b
        chars.append(chr(word + 63))
    return header + "".join(chars)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise GraphError("graph6 byte out of range")
    if data[0] < 63:
        n = data[0]
        body = data[1:]
    else:
        if len(data) < 4 or data[0] != 63:
            raise GraphError("bad graph6 header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    if n < 1:
        raise GraphError("graph6 with no vertices")
    need = n * (n - 1) // 2
    if len(body) * 6 < need:
        raise GraphError("graph6 string too short")
    bits = []
    for word in body:
        for shift in range(5, -1, -1):
            bits.append((word >> shift) & 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)
