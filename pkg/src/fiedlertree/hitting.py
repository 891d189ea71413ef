"""Expected hitting times to a target set, and the max-degree bound.

Hitting times solve h(v) = 1 + mean of h over neighbors on non-targets,
h = 0 on targets, by dense direct elimination with a residual check and one
round of iterative refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import (
    AttachedComponent,
    DisconnectedGraphError,
    Graph,
    GraphError,
    PathDecomposition,
    is_connected,
)

SOLVE_LIMIT = 5000
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class HittingProfile:
    targets: frozenset[int]
    h: np.ndarray
    hit_max: float
    argmax: int

    def to_dict(self) -> dict:
        return {
            "targets": sorted(self.targets),
            "h": [float(x) for x in self.h],
            "hit_max": self.hit_max,
            "argmax": self.argmax,
        }


def hitting_times(g: Graph, targets: Iterable[int]) -> HittingProfile:
    """Expected steps to reach the target set from every vertex."""
    target_set = frozenset(targets)
    if not target_set:
        raise ValueError("target set must be nonempty")
    for t in target_set:
        if not 0 <= t < g.n:
            raise ValueError(f"target {t} out of range")
    if g.n > SOLVE_LIMIT:
        raise GraphError(f"hitting solve limited to n <= {SOLVE_LIMIT}")
    if not is_connected(g):
        raise DisconnectedGraphError("hitting_times requires a connected graph")
    h = np.zeros(g.n)
    free = [v for v in range(g.n) if v not in target_set]
    if free:
        index = {v: i for i, v in enumerate(free)}
        k = len(free)
        a = np.eye(k)
        for v in free:
            i = index[v]
            w = 1.0 / len(g.adj[v])
            for u in g.adj[v]:
                j = index.get(u)
                if j is not None:
                    a[i, j] -= w
        b = np.ones(k)
        sol = np.linalg.solve(a, b)
        # one refinement pass with the residual accumulated in extended
        # precision; the absorbing system's conditioning grows like diam^2
        # and plain double refinement is not enough at n ~ 1000
        a_ld = a.astype(np.longdouble)
        b_ld = b.astype(np.longdouble)
        resid = (b_ld - a_ld @ sol.astype(np.longdouble)).astype(np.float64)
        sol = sol + np.linalg.solve(a, resid)
        resid = (b_ld - a_ld @ sol.astype(np.longdouble)).astype(np.float64)
        if float(np.max(np.abs(resid))) > RESIDUAL_TOL:
            raise GraphError(
                f"hitting solve residual {float(np.max(np.abs(resid))):.3e} "
                "after refinement"
            )
        for v, value in zip(free, sol):
            h[v] = value
    arg = int(np.argmax(h))
    return HittingProfile(
        targets=target_set, h=h, hit_max=float(h[arg]), argmax=arg
    )


def attachment_hit(
    decomp: PathDecomposition, component: AttachedComponent, g: Graph
) -> float:
    """Worst expected time from inside an attachment to its path anchor.

    Valid only for isolated components: isolation means the induced subgraph
    on the component plus its anchor preserves every component vertex's
    degree, so the walk restricted there matches the walk in the full graph
    until it first touches the path.
    """
    if not component.isolated:
        raise GraphError(
            "attachment touches more than one path vertex; its anchor hitting "
            "time is only defined for isolated components"
        )
    anchor = decomp.path[component.anchor_position]
    vertices = sorted(component.vertices | {anchor})
    index = {v: i for i, v in enumerate(vertices)}
    edges = [
        (index[u], index[v])
        for u in vertices
        for v in g.adj[u]
        if v in index and u < v
    ]
    sub = Graph(len(vertices), edges)
    profile = hitting_times(sub, [index[anchor]])
    return float(max(profile.h[index[v]] for v in component.vertices))


def max_degree_hitting_bound(delta: int, diam: int) -> float:
    """The explicit max-degree hitting bound diam * delta**diam.

    Saturates to infinity instead of overflowing.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    if diam < 0:
        raise ValueError("diam must be >= 0")
    try:
        return float(diam) * float(delta) ** diam
    except OverflowError:
        return float("inf")
