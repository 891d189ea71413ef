"""Simple undirected graphs in adjacency form, plus path/diameter machinery.

Vertices are 0-based integers.  A :class:`Graph` is immutable after
construction, so every function in this package can treat it as a value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph construction or unsupported graph input."""


class EdgeListParseError(GraphError):
    """Malformed edge-list text; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DisconnectedGraphError(GraphError):
    """Operation requires a connected graph."""


class NotATreeError(GraphError):
    """Operation is only supported on trees (or caller-certified paths)."""


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Guarantees after construction: adjacency is symmetric, sorted, free of
    self-loops and duplicates, and ``m`` equals half the degree sum.
    """

    __slots__ = ("n", "m", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in nbrs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "m", sum(len(a) for a in adj) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class AttachedComponent:
    """A connected piece hanging off one position of a reference path."""

    anchor_position: int
    vertices: frozenset[int]
    size: int
    isolated: bool


@dataclass(frozen=True)
class PathDecomposition:
    """A path plus the components of the graph left after removing it.

    ``attachments[k]`` lists the components anchored at path position ``k``
    (edge-distance from the first path vertex).  A component is *isolated*
    when every edge leaving its vertex set goes to that single path vertex.
    """

    path: tuple[int, ...]
    attachments: tuple[tuple[AttachedComponent, ...], ...]

    @property
    def diameter(self) -> int:
        return len(self.path) - 1

    def all_components(self) -> Iterator[AttachedComponent]:
        for row in self.attachments:
            yield from row


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` edge lines into a Graph on vertices ``0..max_index``.

    Blank lines are ignored and ``#`` starts a comment.  Raises
    :class:`EdgeListParseError` with the line number on malformed lines,
    self-loops and duplicate edges.
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    max_index = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(lineno, f"expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(lineno, f"non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, f"negative vertex index in {raw!r}")
        if u == v:
            raise EdgeListParseError(lineno, f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise EdgeListParseError(lineno, f"duplicate edge ({u},{v})")
        seen.add(key)
        edges.append((u, v))
        max_index = max(max_index, u, v)
    if max_index < 0:
        raise EdgeListParseError(0, "no edges found")
    return Graph(max_index + 1, edges)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Unweighted shortest-path distances from ``source`` to every vertex."""
    dist = _bfs_partial(g, source)
    if any(d < 0 for d in dist):
        raise DisconnectedGraphError(f"vertex unreachable from {source}")
    return dist


def _bfs_partial(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dv + 1
                queue.append(u)
    return dist


def is_connected(g: Graph) -> bool:
    return all(d >= 0 for d in _bfs_partial(g, 0))


def is_tree(g: Graph) -> bool:
    return g.m == g.n - 1 and is_connected(g)


def connected_components(g: Graph) -> list[list[int]]:
    out: list[list[int]] = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        out.append(comp)
    return out


def max_degree(g: Graph) -> int:
    return max(len(a) for a in g.adj)


def diameter_and_diametral_pairs(g: Graph) -> tuple[int, set[tuple[int, int]]]:
    """Diameter and every unordered vertex pair realizing it.

    All-source traversal; pairs are returned as (u, v) with u < v.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("diameter undefined on disconnected graph")
    best = 0
    pairs: set[tuple[int, int]] = set()
    for s in range(g.n):
        dist = _bfs_partial(g, s)
        for v in range(s + 1, g.n):
            d = dist[v]
            if d > best:
                best = d
                pairs = {(s, v)}
            elif d == best and best > 0:
                pairs.add((s, v))
    if g.n == 1:
        return 0, set()
    return best, pairs


def _bfs_parents(g: Graph, source: int) -> list[int]:
    parent = [-2] * g.n
    parent[source] = -1
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if parent[u] == -2:
                parent[u] = v
                queue.append(u)
    return parent


def tree_path(g: Graph, u: int, v: int) -> tuple[int, ...]:
    """The unique u-v path in a tree (as vertex sequence from u to v)."""
    parent = _bfs_parents(g, u)
    if parent[v] == -2:
        raise DisconnectedGraphError(f"{v} unreachable from {u}")
    out = [v]
    while out[-1] != u:
        out.append(parent[out[-1]])
    out.reverse()
    return tuple(out)


def longest_path(g: Graph) -> tuple[int, ...]:
    """A longest path in a tree, as a vertex sequence.

    For trees a diametral shortest path is a longest path.  Among all
    diametral paths the lexicographically smallest sequence is returned,
    oriented so the smaller endpoint comes first.  Non-tree inputs are
    rejected: finding a certified longest path in a general graph is out
    of scope, use :func:`decompose_along_path` with a known path instead.
    """
    if not is_tree(g):
        raise NotATreeError("longest_path requires a tree")
    if g.n == 1:
        return (0,)
    _, pairs = diameter_and_diametral_pairs(g)
    lead = min(u for u, _ in pairs)
    candidates = [tree_path(g, u, v) for u, v in pairs if u == lead]
    return min(candidates)


def decompose_along_path(g: Graph, path: Sequence[int]) -> PathDecomposition:
    """Split ``g`` into ``path`` plus the connected components hanging off it.

    Every non-path vertex lands in exactly one component; a component is
    anchored at the smallest path position it touches and flagged isolated
    only if it touches a single path vertex.  Non-isolation is reported,
    not rejected.
    """
    path = tuple(path)
    pos = {v: k for k, v in enumerate(path)}
    if len(pos) != len(path):
        raise GraphError("path has repeated vertices")
    for a, b in zip(path, path[1:]):
        if b not in g.adj[a]:
            raise GraphError(f"path step ({a},{b}) is not an edge")
    on_path = [False] * g.n
    for v in path:
        if not (0 <= v < g.n):
            raise GraphError(f"path vertex {v} out of range")
        on_path[v] = True

    seen = [False] * g.n
    rows: list[list[AttachedComponent]] = [[] for _ in range(len(path))]
    for s in range(g.n):
        if on_path[s] or seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        anchors: set[int] = set()
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if on_path[u]:
                    anchors.add(pos[u])
                elif not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        k = min(anchors)
        rows[k].append(
            AttachedComponent(
                anchor_position=k,
                vertices=frozenset(comp),
                size=len(comp),
                isolated=len(anchors) == 1,
            )
        )
    return PathDecomposition(path=path, attachments=tuple(tuple(r) for r in rows))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``vertices``; returns it with old->new index map."""
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v])
        for u in verts
        for v in g.adj[u]
        if v in index and u < v
    ]
    return Graph(len(verts), edges), index
