"""Admissibility checks for the extrema-at-diametral-endpoints property.

A graph built as a long path with isolated attachments is *admissible* when
every attachment is small (size at most diam/32) and quick to escape
(anchor hitting time at most min(k, diam-k)^2 / 50 at path position k).
Admissible graphs place the Fiedler extrema on a diametral pair; this
module checks the conditions, reports the slack margins that make the
guarantee work, and classifies where the extrema actually sit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import (
    Graph,
    GraphError,
    decompose_along_path,
    diameter_and_diametral_pairs,
    longest_path,
)
from .hitting import attachment_hit
from .spectral import EigenPair, fiedler_pair

EXTREMA_TIE_TOL = 1e-9
SIZE_DIVISOR = 32.0
HIT_DIVISOR = 50.0
LEG_DIVISOR = 20.0


@dataclass(frozen=True)
class ComponentCheck:
    anchor_position: int
    size: int
    size_bound: float
    size_ok: bool
    hit: float | None
    hit_bound: float
    hit_ok: bool
    isolated: bool

    @property
    def ok(self) -> bool:
        return self.isolated and self.size_ok and self.hit_ok

    def to_dict(self) -> dict:
        return {
            "anchor_position": self.anchor_position,
            "size": self.size,
            "size_bound": self.size_bound,
            "size_ok": self.size_ok,
            "hit": self.hit,
            "hit_bound": self.hit_bound,
            "hit_ok": self.hit_ok,
            "isolated": self.isolated,
        }


@dataclass(frozen=True)
class AdmissibilityReport:
    diam: int
    components: tuple[ComponentCheck, ...]
    admissible: bool
    lambda2: float
    degenerate: bool
    lambda_hit_margin: float      # lambda2 * max attachment hit, <= 1/2 when admissible
    lambda_path_margin: float     # lambda2 * diam^2 / 2, <= 5 always

    def to_dict(self) -> dict:
        return {
            "diam": self.diam,
            "components": [c.to_dict() for c in self.components],
            "admissible": self.admissible,
            "lambda2": self.lambda2,
            "degenerate": self.degenerate,
            "lambda_hit_margin": self.lambda_hit_margin,
            "lambda_path_margin": self.lambda_path_margin,
        }


def check_admissibility(g: Graph, path: Sequence[int] | None = None) -> AdmissibilityReport:
    """Evaluate both admissibility conditions along the longest path.

    ``path`` may be supplied for non-tree graphs whose longest path the
    caller certifies; trees find it themselves.  Violations are reported,
    never raised.
    """
    if path is None:
        path = longest_path(g)
    decomp = decompose_along_path(g, path)
    diam = decomp.diameter
    size_bound = diam / SIZE_DIVISOR
    rows = []
    max_hit = 0.0
    for comp in decomp.all_components():
        k = comp.anchor_position
        hit_bound = min(k, diam - k) ** 2 / HIT_DIVISOR
        if comp.isolated:
            hit = attachment_hit(decomp, comp, g)
            max_hit = max(max_hit, hit)
            hit_ok = hit <= hit_bound
        else:
            hit = None
            hit_ok = False
        rows.append(
            ComponentCheck(
                anchor_position=k,
                size=comp.size,
                size_bound=size_bound,
                size_ok=comp.size <= size_bound,
                hit=hit,
                hit_bound=hit_bound,
                hit_ok=hit_ok,
                isolated=comp.isolated,
            )
        )
    pair = fiedler_pair(g)
    return AdmissibilityReport(
        diam=diam,
        components=tuple(rows),
        admissible=all(r.ok for r in rows),
        lambda2=pair.lam,
        degenerate=pair.degenerate,
        lambda_hit_margin=pair.lam * max_hit,
        lambda_path_margin=pair.lam * diam**2 / 2.0,
    )


@dataclass(frozen=True)
class CaterpillarSpec:
    """Spine of ``spine_edges`` edges with a pendant path per spine position.

    ``legs[k]`` is the leg length (in edges) at position k, for
    k in 0..spine_edges.
    """

    spine_edges: int
    legs: tuple[int, ...]

    def __post_init__(self):
        if self.spine_edges < 1:
            raise ValueError("spine needs at least one edge")
        if len(self.legs) != self.spine_edges + 1:
            raise ValueError("legs must list one length per spine position")
        if any(f < 0 for f in self.legs):
            raise ValueError("leg lengths must be >= 0")


def check_caterpillar_rule(spec: CaterpillarSpec) -> bool:
    """Caterpillar rule: every leg obeys legs[k] <= min(k, n-k) / 20."""
    n = spec.spine_edges
    return all(f <= min(k, n - k) / LEG_DIVISOR for k, f in enumerate(spec.legs))


@dataclass(frozen=True)
class ExtremaVerdict:
    argmax: tuple[int, ...]
    argmin: tuple[int, ...]
    diametral_pairs: tuple[tuple[int, int], ...]
    strict: bool
    relaxed: bool
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "argmax": list(self.argmax),
            "argmin": list(self.argmin),
            "diametral_pairs": [list(p) for p in self.diametral_pairs],
            "strict": self.strict,
            "relaxed": self.relaxed,
            "degenerate": self.degenerate,
        }


def extrema_verdict(g: Graph, pair: EigenPair) -> ExtremaVerdict:
    """Where the Fiedler extrema sit relative to the diametral pairs.

    strict: unique argmax and argmin forming a diametral pair.  relaxed:
    some diametral pair has one endpoint among the (tied) argmax set and the
    other among the argmin set.  With degenerate lambda_2 the verdicts are
    still reported but flagged unreliable.
    """
    phi = pair.phi
    top = float(np.max(phi))
    bot = float(np.min(phi))
    argmax = tuple(v for v in range(g.n) if phi[v] >= top - EXTREMA_TIE_TOL)
    argmin = tuple(v for v in range(g.n) if phi[v] <= bot + EXTREMA_TIE_TOL)
    _, pairs = diameter_and_diametral_pairs(g)
    pair_list = tuple(sorted(pairs))
    amax = set(argmax)
    amin = set(argmin)
    relaxed = any(
        (u in amax and v in amin) or (u in amin and v in amax)
        for u, v in pair_list
    )
    strict = (
        len(argmax) == 1
        and len(argmin) == 1
        and (min(argmax[0], argmin[0]), max(argmax[0], argmin[0])) in pairs
    )
    return ExtremaVerdict(
        argmax=argmax,
        argmin=argmin,
        diametral_pairs=pair_list,
        strict=strict,
        relaxed=relaxed,
        degenerate=pair.degenerate,
    )


def distance_between_extrema(g: Graph, verdict: ExtremaVerdict) -> int:
    """Smallest graph distance between an argmax and an argmin vertex."""
    if verdict.degenerate:
        raise GraphError("extrema distance is unreliable under a degenerate lambda_2")
    from collections import deque

    dist = [-1] * g.n
    queue = deque()
    for s in verdict.argmax:
        dist[s] = 0
        queue.append(s)
    targets = set(verdict.argmin)
    best = math.inf
    while queue:
        v = queue.popleft()
        if v in targets:
            best = min(best, dist[v])
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return int(best)
