"""The random-walk payoff game: exact expectation and Monte-Carlo simulation.

A walker starts at ``start``; at every vertex other than ``target`` it banks
``lam * phi(w) / deg(w)`` and jumps to a uniformly random neighbor; reaching
the target ends the game.  The expected total payoff is solved exactly from
the absorbing-chain linear system, and can be estimated by simulation with
reproducible per-sample random streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import DisconnectedGraphError, Graph, is_connected
from .rng import uniform_block
from .spectral import EigenPair

SOLVE_LIMIT = 5000
DEFAULT_STEP_BUDGET = 10**9


class GameSizeError(ValueError):
    """Graph too large for the dense absorbing solve."""


@dataclass(frozen=True)
class GameSpec:
    graph: Graph
    eigenpair: EigenPair
    start: int
    target: int

    def __post_init__(self):
        g = self.graph
        if not (0 <= self.start < g.n and 0 <= self.target < g.n):
            raise ValueError("start/target out of range")
        if len(self.eigenpair.phi) != g.n:
            raise ValueError("eigenpair does not match the graph")
        if not is_connected(g):
            raise DisconnectedGraphError("game requires a connected graph")


@dataclass(frozen=True)
class PayoffEstimate:
    exact: float
    mc_mean: float
    mc_stderr: float
    samples: int
    seed: int
    max_steps_hit: bool

    def to_dict(self) -> dict:
        return {
            "exact": self.exact,
            "mc_mean": self.mc_mean,
            "mc_stderr": self.mc_stderr,
            "samples": self.samples,
            "seed": self.seed,
            "max_steps_hit": self.max_steps_hit,
        }


def _absorbing_matrix(g: Graph, absorbed: list[int]) -> tuple[np.ndarray, list[int]]:
    """I - Q for the uniform walk with the given absorbed vertices removed."""
    absorbed_set = set(absorbed)
    free = [v for v in range(g.n) if v not in absorbed_set]
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
    return a, free


def exact_payoff(spec: GameSpec) -> float:
    """Expected payoff, solved from the absorbing linear system.

    The value is obtained by direct elimination, not from the eigenvector
    difference, so the identity `payoff = phi(start) - phi(target)` stays
    independently testable.
    """
    g = spec.graph
    if g.n > SOLVE_LIMIT:
        raise GameSizeError(f"exact solve limited to n <= {SOLVE_LIMIT}")
    if spec.start == spec.target:
        return 0.0
    lam, phi = spec.eigenpair.lam, spec.eigenpair.phi
    a, free = _absorbing_matrix(g, [spec.target])
    c = np.array([lam * phi[v] / len(g.adj[v]) for v in free])
    try:
        sol = np.linalg.solve(a, c)
    except np.linalg.LinAlgError as exc:  # unreachable for connected graphs
        raise RuntimeError("absorbing system unexpectedly singular") from exc
    # extended-precision refinement, same rationale as in hitting_times
    resid = (
        c.astype(np.longdouble) - a.astype(np.longdouble) @ sol.astype(np.longdouble)
    ).astype(np.float64)
    sol = sol + np.linalg.solve(a, resid)
    return float(sol[free.index(spec.start)])


def _flat_adjacency(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    counts = np.fromiter((len(a) for a in g.adj), dtype=np.int64, count=g.n)
    offsets = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    flat = np.fromiter(
        (u for a in g.adj for u in a), dtype=np.int64, count=int(offsets[-1])
    )
    return flat, offsets[:-1], counts


def walk_payoffs(
    g: Graph,
    contrib: np.ndarray,
    start: int,
    target: int,
    samples: int,
    seed: int,
    max_steps: int,
    sample_offset: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-sample payoffs of independent walks, plus truncation flags.

    Sample ``i`` consumes the (seed, sample_offset + i) random stream, so
    any partition of the sample range reproduces the same payoffs.
    """
    pay = np.zeros(samples)
    truncated = np.zeros(samples, dtype=bool)
    if start == target or samples == 0:
        return pay, truncated
    flat, offsets, counts = _flat_adjacency(g)
    ids = np.arange(sample_offset, sample_offset + samples, dtype=np.uint64)
    slots = np.arange(samples)
    pos = np.full(samples, start, dtype=np.int64)
    buf = np.empty((samples, 4))
    step = 0
    while len(slots):
        if step >= max_steps:
            truncated[slots] = True
            break
        word = step & 3
        if word == 0:
            buf = uniform_block(step >> 2, ids, seed)
        pay[slots] += contrib[pos]
        deg = counts[pos]
        choice = (buf[:, word] * deg).astype(np.int64)
        np.minimum(choice, deg - 1, out=choice)
        pos = flat[offsets[pos] + choice]
        moving = pos != target
        if not moving.all():
            slots = slots[moving]
            ids = ids[moving]
            pos = pos[moving]
            buf = buf[moving]
        step += 1
    return pay, truncated


def simulate_payoff(
    spec: GameSpec,
    samples: int,
    seed: int,
    max_steps: int | None = None,
) -> PayoffEstimate:
    """Monte-Carlo payoff estimate with a counter-based per-sample RNG.

    ``max_steps`` caps each walk; the default spreads a total budget of 1e9
    steps over the samples.  Truncated walks keep their partial payoff and
    set ``max_steps_hit``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if max_steps is None:
        max_steps = max(1, DEFAULT_STEP_BUDGET // samples)
    lam, phi = spec.eigenpair.lam, spec.eigenpair.phi
    g = spec.graph
    contrib = lam * phi / np.array([len(a) for a in g.adj], dtype=float)
    pay, truncated = walk_payoffs(
        g, contrib, spec.start, spec.target, samples, seed, max_steps
    )
    mean = float(np.mean(pay))
    stderr = (
        float(np.std(pay, ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    )
    return PayoffEstimate(
        exact=exact_payoff(spec),
        mc_mean=mean,
        mc_stderr=stderr,
        samples=samples,
        seed=seed,
        max_steps_hit=bool(truncated.any()),
    )


@dataclass(frozen=True)
class EncounterProfile:
    """Expected number of visits per vertex before absorption at the target.

    The count includes the visit at time zero, so the start vertex scores at
    least 1; the target scores 0.
    """

    start: int
    target: int
    visits: np.ndarray


def expected_encounters(g: Graph, target: int, start: int) -> EncounterProfile:
    """Fundamental-matrix visit counts of the walk from start to target."""
    if g.n > SOLVE_LIMIT:
        raise GameSizeError(f"exact solve limited to n <= {SOLVE_LIMIT}")
    if not is_connected(g):
        raise DisconnectedGraphError("expected_encounters requires connectivity")
    visits = np.zeros(g.n)
    if start == target:
        return EncounterProfile(start, target, visits)
    a, free = _absorbing_matrix(g, [target])
    unit = np.zeros(len(free))
    unit[free.index(start)] = 1.0
    row = np.linalg.solve(a.T, unit)
    for v, value in zip(free, row):
        visits[v] = value
    return EncounterProfile(start, target, visits)
