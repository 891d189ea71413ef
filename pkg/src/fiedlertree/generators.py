"""Parametric graph families: paths, roses, spines, caterpillars, drift graphs.

Every generator returns a validated :class:`Graph`; vertex numbering is
documented per family so tests can address specific vertices.
"""

from __future__ import annotations

import numpy as np

from .admissibility import CaterpillarSpec
from .graph import Graph
from .rng import uniform_block


def gen_path(n: int) -> Graph:
    """Path on n vertices, numbered 0..n-1 along the path."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_rose(petals: int) -> Graph:
    """Hub vertex 0 with `petals` pendant leaves 1..petals."""
    if petals < 1:
        raise ValueError("rose needs at least one petal")
    return Graph(petals + 1, [(0, i) for i in range(1, petals + 1)])


def gen_rose_on_path(d: int, attach_pos: int, petals: int) -> Graph:
    """Path of d edges (vertices 0..d) with a rose hub tied to `attach_pos`.

    The hub is vertex d+1; its petals are d+2 .. d+1+petals.  petals=0
    degenerates to a single pendant stub.
    """
    if d < 1:
        raise ValueError("need a path of at least one edge")
    if not 0 <= attach_pos <= d:
        raise ValueError(f"attach position {attach_pos} outside 0..{d}")
    if petals < 0:
        raise ValueError("petals must be >= 0")
    edges = [(i, i + 1) for i in range(d)]
    hub = d + 1
    edges.append((attach_pos, hub))
    edges.extend((hub, hub + 1 + i) for i in range(petals))
    return Graph(d + 2 + petals, edges)


def gen_spine(d: int, stub_len: int) -> Graph:
    """Path of d edges with a pendant path of stub_len edges at the midpoint.

    Stub vertices are d+1 .. d+stub_len, chained outward from vertex d//2.
    """
    if d < 1:
        raise ValueError("need a path of at least one edge")
    if stub_len < 0:
        raise ValueError("stub_len must be >= 0")
    edges = [(i, i + 1) for i in range(d)]
    prev = d // 2
    for j in range(stub_len):
        nxt = d + 1 + j
        edges.append((prev, nxt))
        prev = nxt
    return Graph(d + 1 + stub_len, edges)


def gen_spine_with_leaves(d: int, stub_len: int, leaves_per_stub_vertex: int) -> Graph:
    """gen_spine plus pendant leaves on every stub vertex."""
    if leaves_per_stub_vertex < 0:
        raise ValueError("leaves_per_stub_vertex must be >= 0")
    base = gen_spine(d, stub_len)
    edges = list(base.edges())
    nxt = base.n
    for j in range(stub_len):
        stub_vertex = d + 1 + j
        for _ in range(leaves_per_stub_vertex):
            edges.append((stub_vertex, nxt))
            nxt += 1
    return Graph(nxt, edges)


def gen_caterpillar(spec: CaterpillarSpec) -> Graph:
    """Spine of spec.spine_edges edges plus a pendant path per spine vertex.

    Spine vertices are 0..spine_edges; the leg at position k is a chain of
    spec.legs[k] vertices.
    """
    edges = [(i, i + 1) for i in range(spec.spine_edges)]
    nxt = spec.spine_edges + 1
    for k, leg in enumerate(spec.legs):
        prev = k
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def gen_drift_graph(delta: int, levels: int) -> Graph:
    """Complete (delta-1)-ary tree plus edges from every deepest vertex to the root.

    Vertex 0 is the root; levels are numbered 1..levels going down and laid
    out breadth-first.  For levels == 1 the children are already adjacent to
    the root, so no extra edges are added (the graph stays simple).
    """
    if delta < 3:
        raise ValueError("delta must be >= 3")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    branching = delta - 1
    edges = []
    level_start = 0
    level_count = 1
    nxt = 1
    last_level: list[int] = [0]
    for _ in range(levels):
        current = []
        for parent in last_level:
            for _ in range(branching):
                edges.append((parent, nxt))
                current.append(nxt)
                nxt += 1
        last_level = current
    if levels >= 2:
        edges.extend((0, v) for v in last_level)
    return Graph(nxt, edges)


def prufer_decode(seq: list[int], n: int | None = None) -> Graph:
    """Labeled tree from its Pruefer sequence (length n-2)."""
    n = len(seq) + 2 if n is None else n
    if n < 2 or len(seq) != n - 2:
        raise ValueError("sequence length must be n-2 with n >= 2")
    deg = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"symbol {x} out of range")
        deg[x] += 1
    edges = []
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for v in seq:
        edges.append((leaf, v))
        deg[v] -= 1
        if deg[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return Graph(n, edges)


def prufer_encode(g: Graph) -> list[int]:
    """Pruefer sequence of a labeled tree (inverse of prufer_decode)."""
    from .graph import is_tree

    if not is_tree(g):
        raise ValueError("prufer_encode requires a tree")
    n = g.n
    if n == 2:
        return []
    deg = [len(a) for a in g.adj]
    removed = [False] * n
    out = []
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for _ in range(n - 2):
        removed[leaf] = True
        nbr = next(u for u in g.adj[leaf] if not removed[u])
        out.append(nbr)
        deg[nbr] -= 1
        if deg[nbr] == 1 and nbr < ptr:
            leaf = nbr
        else:
            ptr += 1
            while deg[ptr] != 1 or removed[ptr]:
                ptr += 1
            leaf = ptr
    return out


def gen_random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree on n vertices, deterministic per seed."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(0, 1)])
    seq = random_integers(n - 2, n, seed)
    return prufer_decode(list(seq))


def random_integers(count: int, bound: int, seed: int, stream: int = 0) -> np.ndarray:
    """`count` integers uniform on [0, bound), from a counter-based stream."""
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    blocks = (count + 3) // 4
    ids = np.full(blocks, stream, dtype=np.uint64)
    u = np.concatenate(
        [uniform_block(b, ids[b : b + 1], seed)[0] for b in range(blocks)]
    )[:count]
    vals = (u * bound).astype(np.int64)
    np.minimum(vals, bound - 1, out=vals)
    return vals
