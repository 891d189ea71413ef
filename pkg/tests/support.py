"""Shared constructions for the tests: random graphs satisfying the
admissibility conditions by design."""

from __future__ import annotations

import math

from fiedlertree.generators import gen_random_tree, random_integers
from fiedlertree.graph import Graph
from fiedlertree.hitting import hitting_times


def _attachment_and_hit(size: int, seed: int) -> tuple[Graph, float]:
    """Random tree on `size` vertices plus its worst anchor hitting time
    when glued to a path by vertex 0."""
    t = gen_random_tree(size, seed)
    edges = [(u + 1, v + 1) for u, v in t.edges()]
    edges.append((0, 1))
    glued = Graph(size + 1, edges)
    prof = hitting_times(glued, [0])
    return t, float(prof.hit_max)


def random_admissible_tree(seed: int, min_d: int = 80, max_d: int = 160):
    """Path plus random tree attachments placed so both admissibility
    conditions hold by construction.  Returns (graph, spine)."""
    draws = random_integers(64, 1 << 30, seed, stream=17)
    it = iter(int(x) for x in draws)
    d = min_d + next(it) % (max_d - min_d + 1)
    edges = [(i, i + 1) for i in range(d)]
    nxt = d + 1
    n_attach = 1 + next(it) % 6
    max_size = max(1, min(5, d // 32))
    for i in range(n_attach):
        size = 1 + next(it) % max_size
        tree, hit = _attachment_and_hit(size, seed=seed * 131 + i)
        kmin = max(8, math.isqrt(int(50 * hit)) + 1)
        kmax = d - kmin
        assert kmin <= kmax, "construction window is empty"
        k = kmin + next(it) % (kmax - kmin + 1)
        # relabel attachment vertices to fresh ids; vertex 0 glues to the spine
        edges.append((k, nxt))
        for u, v in tree.edges():
            edges.append((nxt + u, nxt + v))
        nxt += tree.n
    return Graph(nxt, edges), tuple(range(d + 1))
