"""Graph Laplacians, Fiedler eigenpairs, and spectral property verifiers.

The dense solver (default up to 2000 vertices) runs the in-repo symmetric
eigensolver from :mod:`fiedlertree.symeig`.  Larger graphs use inverse-power
iteration on the constant-deflated Laplacian with an exact tree solve (or
conjugate gradients on non-trees) as the inner step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import symeig
from .graph import (
    DisconnectedGraphError,
    Graph,
    NotATreeError,
    is_connected,
    is_tree,
)

ZERO_TOL = 1e-10          # vector entries within this of zero count as zero
DEGENERACY_GAP = 1e-8     # eigenvalue gap at or below this flags degeneracy
RESIDUAL_TOL = 1e-9       # residual bound: ||L phi - lam phi|| <= tol*max(1, lam)
ITERATIVE_RESIDUAL = 1e-10
DENSE_LIMIT = 2000
SIGN_TOL = 1e-8


class SolverError(RuntimeError):
    """Eigensolver failed; message carries the last residual seen."""


class LaplacianOperator:
    """Action x -> deg(v)*x(v) - sum of x over neighbors, per vertex."""

    def __init__(self, g: Graph):
        self.graph = g
        counts = np.fromiter((len(a) for a in g.adj), dtype=np.int64, count=g.n)
        self.indptr = np.zeros(g.n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.indptr[1:])
        self.indices = np.fromiter(
            (u for a in g.adj for u in a), dtype=np.int64, count=int(self.indptr[-1])
        )
        self.degrees = counts.astype(float)
        # reduceat misbehaves on empty segments, so isolated vertices are
        # summed through this mask instead
        self._nonempty = self.indptr[:-1] < self.indptr[1:]

    def apply(self, x: np.ndarray) -> np.ndarray:
        sums = np.zeros(self.graph.n)
        if len(self.indices):
            sums[self._nonempty] = np.add.reduceat(
                x[self.indices], self.indptr[:-1][self._nonempty]
            )
        return self.degrees * x - sums

    __matmul__ = apply

    def dense(self) -> np.ndarray:
        return laplacian_dense(self.graph)


def laplacian_dense(g: Graph) -> np.ndarray:
    out = np.zeros((g.n, g.n))
    for v in range(g.n):
        out[v, v] = len(g.adj[v])
        for u in g.adj[v]:
            out[v, u] = -1.0
    return out


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue of rank ``k`` (1-based, lam_1 = 0) with its unit eigenvector."""

    k: int
    lam: float
    phi: np.ndarray
    residual: float
    gap_to_next: float | None
    degenerate: bool = False

    @property
    def n(self) -> int:
        return len(self.phi)


def eigenpair_to_dict(pair: EigenPair) -> dict:
    return {
        "n": pair.n,
        "k": pair.k,
        "lambda": pair.lam,
        "residual": pair.residual,
        "gap": pair.gap_to_next,
        "phi": [float(x) for x in pair.phi],
    }


def _path_ordered_tridiagonal(g: Graph) -> bool:
    # Laplacian has bandwidth 1 iff every edge joins consecutive indices
    return g.m == g.n - 1 and all(
        len(a) <= 2 and all(abs(u - v) == 1 for u in a) for v, a in enumerate(g.adj)
    )


def _tridiagonal_parts(g: Graph):
    d = np.array([float(len(a)) for a in g.adj])
    e = np.full(g.n - 1, -1.0)
    return d, e


def _finish_pair(g: Graph, k: int, evals: np.ndarray, phi: np.ndarray) -> EigenPair:
    n = g.n
    lam = float(evals[k - 1])
    op = LaplacianOperator(g)
    if k >= 2:
        # the constant vector is exactly in the kernel, so deflating it can
        # only shrink the residual
        phi = phi - (float(np.sum(phi)) / n)
    norm = math.sqrt(float(phi @ phi))
    if norm == 0.0:
        raise SolverError("eigenvector collapsed to zero after deflation")
    phi = phi / norm
    lead = np.flatnonzero(np.abs(phi) > SIGN_TOL)
    if len(lead) and phi[lead[0]] < 0:
        phi = -phi
    resid = op.apply(phi) - lam * phi
    residual = math.sqrt(float(resid @ resid))
    if residual > RESIDUAL_TOL * max(1.0, abs(lam)):
        raise SolverError(
            f"eigenpair residual {residual:.3e} exceeds tolerance for k={k}"
        )
    gap_next = float(evals[k] - evals[k - 1]) if k < n else None
    gap_prev = float(evals[k - 1] - evals[k - 2]) if k >= 2 else None
    gaps = [x for x in (gap_next, gap_prev) if x is not None]
    degenerate = bool(gaps and min(gaps) <= DEGENERACY_GAP)
    phi.setflags(write=False)
    return EigenPair(
        k=k,
        lam=lam,
        phi=phi,
        residual=residual,
        gap_to_next=gap_next,
        degenerate=degenerate,
    )


def _dense_eigenpair(g: Graph, k: int) -> EigenPair:
    if _path_ordered_tridiagonal(g):
        d, e = _tridiagonal_parts(g)
        evals, vecs = symeig.tridiagonal_selected_eigenpairs(d, e, [k])
        return _finish_pair(g, k, evals, vecs[k])
    evals, vecs = symeig.selected_eigenpairs(laplacian_dense(g), [k])
    return _finish_pair(g, k, evals, vecs[k])


def eigenpair_k(g: Graph, k: int) -> EigenPair:
    """The k-th smallest Laplacian eigenpair (dense path, n <= 2000).

    Ties are broken by returning an arbitrary orthonormal representative of
    the eigenspace, with the degeneracy flag set.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"rank k={k} out of range 1..{g.n}")
    if g.n > DENSE_LIMIT:
        raise SolverError(f"dense solver limited to n <= {DENSE_LIMIT}")
    if not is_connected(g):
        raise DisconnectedGraphError("eigenpair_k requires a connected graph")
    return _dense_eigenpair(g, k)


def fiedler_pair(g: Graph, method: str = "auto") -> EigenPair:
    """The Fiedler eigenpair (k = 2) of a connected graph.

    ``method`` is "auto" (dense up to 2000 vertices, iterative beyond),
    "dense", or "iterative".
    """
    if g.n < 2:
        raise ValueError("fiedler_pair needs at least two vertices")
    if not is_connected(g):
        raise DisconnectedGraphError("fiedler_pair requires a connected graph")
    if method == "auto":
        method = "dense" if g.n <= DENSE_LIMIT else "iterative"
    if method == "dense":
        if g.n > DENSE_LIMIT:
            raise SolverError(f"dense solver limited to n <= {DENSE_LIMIT}")
        return _dense_eigenpair(g, 2)
    if method == "iterative":
        return _iterative_fiedler(g)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# iterative path: inverse-power iteration on the constant-deflated Laplacian


def _tree_order(g: Graph) -> tuple[list[int], list[int]]:
    order = [0]
    parent = [-1] * g.n
    seen = [False] * g.n
    seen[0] = True
    for v in order:
        for u in g.adj[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                order.append(u)
    return order, parent


class _TreeSolver:
    """Exact O(n) solve of L y = b (b ⊥ 1) on a tree by leaf elimination."""

    def __init__(self, g: Graph):
        self.g = g
        self.order, self.parent = _tree_order(g)

    def solve(self, b: np.ndarray) -> np.ndarray:
        g = self.g
        order, parent = self.order, self.parent
        coef = [float(len(a)) for a in g.adj]
        rhs = [float(x) for x in b]
        for v in reversed(order):
            p = parent[v]
            if p < 0:
                continue
            c = coef[v]
            coef[p] -= 1.0 / c
            rhs[p] += rhs[v] / c
        y = [0.0] * g.n
        # the root equation is redundant for b ⊥ 1; pin the free constant
        for v in order:
            p = parent[v]
            if p < 0:
                y[v] = 0.0
            else:
                y[v] = (rhs[v] + y[p]) / coef[v]
        out = np.array(y)
        return out - out.mean()


class _CGSolver:
    """Conjugate gradients on the deflated Laplacian for non-tree graphs."""

    def __init__(self, op: LaplacianOperator):
        self.op = op

    def solve(self, b: np.ndarray) -> np.ndarray:
        op = self.op
        n = len(b)
        b = b - b.mean()
        x = np.zeros(n)
        r = b.copy()
        p = r.copy()
        rs = float(r @ r)
        bn = math.sqrt(float(b @ b)) or 1.0
        for _ in range(20 * n + 50):
            if math.sqrt(rs) <= 1e-13 * bn:
                break
            ap = op.apply(p)
            alpha = rs / float(p @ ap)
            x += alpha * p
            r -= alpha * ap
            rs_new = float(r @ r)
            p = r + (rs_new / rs) * p
            rs = rs_new
        x -= x.mean()
        return x


def _iterative_fiedler(g: Graph) -> EigenPair:
    op = LaplacianOperator(g)
    n = g.n
    solver = _TreeSolver(g) if g.m == g.n - 1 else _CGSolver(op)
    x = symeig._seed_vector(n, salt=n * 3 + 1)
    x -= x.mean()
    x /= math.sqrt(float(x @ x))
    budget = 10 * n
    theta = 0.0
    residual = math.inf
    used = 0
    for it in range(budget):
        used = it + 1
        y = solver.solve(x)
        y -= y.mean()
        norm = math.sqrt(float(y @ y))
        if norm == 0.0:
            raise SolverError("inverse-power iterate vanished")
        x = y / norm
        lx = op.apply(x)
        theta = float(x @ lx)
        res = lx - theta * x
        residual = math.sqrt(float(res @ res))
        if residual <= ITERATIVE_RESIDUAL:
            break
    else:
        raise SolverError(
            f"inverse-power iteration missed tolerance after {budget} rounds, "
            f"last residual {residual:.3e}"
        )
    # crude second Ritz value, only used to estimate the spectral gap
    z = symeig._seed_vector(n, salt=n * 7 + 3)
    z -= z.mean()
    z -= float(x @ z) * x
    z /= math.sqrt(float(z @ z))
    for _ in range(max(40, 2 * used)):
        w = solver.solve(z)
        w -= w.mean()
        w -= float(x @ w) * x
        norm = math.sqrt(float(w @ w))
        if norm == 0.0:
            break
        z = w / norm
    theta2 = float(z @ op.apply(z))
    gap = max(theta2 - theta, 0.0)

    phi = x - x.mean()
    phi /= math.sqrt(float(phi @ phi))
    lead = np.flatnonzero(np.abs(phi) > SIGN_TOL)
    if len(lead) and phi[lead[0]] < 0:
        phi = -phi
    resid = op.apply(phi) - theta * phi
    res_norm = math.sqrt(float(resid @ resid))
    if res_norm > RESIDUAL_TOL * max(1.0, abs(theta)):
        raise SolverError(f"iterative residual {res_norm:.3e} above tolerance")
    phi.setflags(write=False)
    return EigenPair(
        k=2,
        lam=theta,
        phi=phi,
        residual=res_norm,
        gap_to_next=gap,
        degenerate=gap <= DEGENERACY_GAP,
    )


# ---------------------------------------------------------------------------
# verifiers


def _connected_within(g: Graph, members: np.ndarray) -> bool:
    keep = np.flatnonzero(members)
    if len(keep) == 0:
        return True
    mask = members
    seen = {int(keep[0])}
    stack = [int(keep[0])]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if mask[u] and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(keep)


def verify_fiedler_connectivity(g: Graph, pair: EigenPair) -> bool:
    """Both closed sign sets of the Fiedler vector induce connected subgraphs.

    Checks {phi >= -tol} and {-phi >= -tol}; the negation is included since
    -phi is an equally valid Fiedler vector.
    """
    if pair.k != 2:
        raise ValueError("connectivity verifier expects the k=2 eigenpair")
    phi = pair.phi
    return _connected_within(g, phi >= -ZERO_TOL) and _connected_within(
        g, -phi >= -ZERO_TOL
    )


@dataclass(frozen=True)
class MonotonicityVerdict:
    status: str  # "pass" | "fail" | "inconclusive"
    witness: tuple[int, int] | None
    extrema_degree_one: bool | None


def _multi_source_distances(g: Graph, sources: list[int]) -> list[int]:
    from collections import deque

    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def verify_monotonicity(g: Graph, pair: EigenPair) -> MonotonicityVerdict:
    """Fiedler values grow along paths leading away from the opposite sign.

    On the positive side: for an edge (u, v) with both values positive and v
    strictly farther from the nearest negative vertex, phi(v) must not drop
    below phi(u); mirrored on the negative side.  Also checks that all
    extreme vertices have degree 1.  Degenerate lam_2 is inconclusive.
    """
    if not is_tree(g):
        raise NotATreeError("monotonicity verifier requires a tree")
    if pair.degenerate:
        return MonotonicityVerdict("inconclusive", None, None)
    phi = pair.phi
    pos = [v for v in range(g.n) if phi[v] > ZERO_TOL]
    neg = [v for v in range(g.n) if phi[v] < -ZERO_TOL]
    if not pos or not neg:
        return MonotonicityVerdict("inconclusive", None, None)
    dist_neg = _multi_source_distances(g, neg)
    dist_pos = _multi_source_distances(g, pos)
    for u, v in g.edges():
        if phi[u] > ZERO_TOL and phi[v] > ZERO_TOL:
            hi, lo = (v, u) if dist_neg[v] > dist_neg[u] else (u, v)
            if dist_neg[hi] > dist_neg[lo] and not (phi[hi] > phi[lo] - 1e-12):
                return MonotonicityVerdict("fail", (lo, hi), None)
        if phi[u] < -ZERO_TOL and phi[v] < -ZERO_TOL:
            hi, lo = (v, u) if dist_pos[v] > dist_pos[u] else (u, v)
            if dist_pos[hi] > dist_pos[lo] and not (phi[hi] < phi[lo] + 1e-12):
                return MonotonicityVerdict("fail", (lo, hi), None)
    top = float(np.max(phi))
    bot = float(np.min(phi))
    extrema = [
        v
        for v in range(g.n)
        if phi[v] >= top - 1e-9 or phi[v] <= bot + 1e-9
    ]
    degree_ok = all(len(g.adj[v]) == 1 for v in extrema)
    if not degree_ok:
        return MonotonicityVerdict("fail", None, False)
    return MonotonicityVerdict("pass", None, True)


@dataclass(frozen=True)
class BoundsReport:
    diam: int
    lam: float
    linf: float
    positive_mass: float
    mckay_lower: float
    ten_over_d2: float
    path_upper_exact: float
    linf_bound: float
    positive_mass_lower: float
    mckay_ok: bool
    upper10_ok: bool
    path_upper_ok: bool
    linf_ok: bool
    positive_mass_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.mckay_ok
            and self.upper10_ok
            and self.path_upper_ok
            and self.linf_ok
            and self.positive_mass_ok
        )

    def to_dict(self) -> dict:
        return {
            "diam": self.diam,
            "lambda": self.lam,
            "linf": self.linf,
            "positive_mass": self.positive_mass,
            "mckay_lower": self.mckay_lower,
            "ten_over_d2": self.ten_over_d2,
            "path_upper_exact": self.path_upper_exact,
            "linf_bound": self.linf_bound,
            "positive_mass_lower": self.positive_mass_lower,
            "mckay_ok": self.mckay_ok,
            "upper10_ok": self.upper10_ok,
            "path_upper_ok": self.path_upper_ok,
            "linf_ok": self.linf_ok,
            "positive_mass_ok": self.positive_mass_ok,
        }


def bounds_report(g: Graph, pair: EigenPair, diam: int | None = None) -> BoundsReport:
    """Evaluate the standard lam_2 / Fiedler-vector bound inventory.

    4/(n*D) <= lam_2 <= min(10/D^2, lam_2 of the contained path), the sup
    norm bound 4/sqrt(D), and the positive-mass bound sqrt(D)/8, each as a
    boolean at 1e-12 slack with the measured quantities included.
    """
    if pair.k != 2:
        raise ValueError("bounds_report expects the k=2 eigenpair")
    if diam is None:
        from .graph import diameter_and_diametral_pairs

        diam, _ = diameter_and_diametral_pairs(g)
    slack = 1e-12
    lam = pair.lam
    phi = pair.phi
    linf = float(np.max(np.abs(phi)))
    pmass = float(np.sum(np.maximum(phi, 0.0)))
    mckay = 4.0 / (g.n * diam)
    ten = 10.0 / diam**2
    path_upper = 2.0 * (1.0 - math.cos(math.pi / (diam + 1)))
    linf_bound = 4.0 / math.sqrt(diam)
    pmass_bound = math.sqrt(diam) / 8.0
    return BoundsReport(
        diam=diam,
        lam=lam,
        linf=linf,
        positive_mass=pmass,
        mckay_lower=mckay,
        ten_over_d2=ten,
        path_upper_exact=path_upper,
        linf_bound=linf_bound,
        positive_mass_lower=pmass_bound,
        mckay_ok=mckay <= lam + slack,
        upper10_ok=lam <= ten + slack,
        path_upper_ok=lam <= path_upper + slack,
        linf_ok=linf <= linf_bound + slack,
        positive_mass_ok=pmass >= pmass_bound - slack,
    )
