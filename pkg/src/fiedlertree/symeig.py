"""Dense symmetric eigensolver: tridiagonalize, QL eigenvalues, inverse iteration.

Pipeline: Householder reduction to tridiagonal form, implicit-shift QL
iteration for all eigenvalues, then inverse iteration on the tridiagonal
matrix for the requested eigenvectors, back-transformed through the stored
reflectors.  Near-coincident eigenvalues are handled by perturbing the
shift and orthogonalizing within the cluster, so degenerate spectra still
yield an orthonormal set of representatives.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = np.finfo(float).eps


class EigenSolverError(RuntimeError):
    """QL or inverse iteration failed to converge; carries diagnostics."""


def tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, list[tuple[int, np.ndarray]]]:
    """Householder reduction of a symmetric matrix to tridiagonal form.

    Returns (diagonal, subdiagonal, reflectors).  Each reflector is a pair
    (offset, u) with u a unit vector acting on indices ``offset:``; applying
    them in reverse order maps tridiagonal eigenvectors back to the original
    basis.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    reflectors: list[tuple[int, np.ndarray]] = []
    for k in range(n - 2):
        x = a[k + 1 :, k]
        alpha = math.sqrt(float(x @ x))
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        v = x.copy()
        v[0] -= alpha
        vnorm = math.sqrt(float(v @ v))
        if vnorm == 0.0:
            continue
        u = v / vnorm
        block = a[k + 1 :, k + 1 :]
        p = block @ u
        kappa = float(u @ p)
        q = p - kappa * u
        block -= 2.0 * np.outer(q, u)
        block -= 2.0 * np.outer(u, q)
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha
        if k + 2 < n:
            a[k + 2 :, k] = 0.0
            a[k, k + 2 :] = 0.0
        reflectors.append((k + 1, u))
    d = np.diag(a).copy()
    e = np.diag(a, -1).copy() if n > 1 else np.empty(0)
    return d, e, reflectors


def back_transform(reflectors: list[tuple[int, np.ndarray]], vec: np.ndarray) -> np.ndarray:
    out = vec.copy()
    for offset, u in reversed(reflectors):
        seg = out[offset:]
        seg -= (2.0 * float(u @ seg)) * u
    return out


def tridiagonal_eigenvalues(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, sorted ascending.

    Implicit-shift QL iteration; scalar arithmetic runs on Python floats
    because the inner loop dominates and numpy scalars are several times
    slower.
    """
    n = len(d)
    if n == 0:
        return np.empty(0)
    dd = list(map(float, d))
    ee = list(map(float, e)) + [0.0]
    if n == 1:
        return np.array(dd)
    hypot = math.hypot
    copysign = math.copysign
    eps = _EPS
    n1 = n - 1
    # cached magnitudes keep the subdiagonal scan cheap
    ad = [abs(x) for x in dd]
    ae = [abs(x) for x in ee]
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n1 and ae[m] > eps * (ad[m] + ad[m + 1]) + 1e-300:
                m += 1
            if m == l:
                break
            iters += 1
            if iters > 50:
                raise EigenSolverError(
                    f"QL failed to converge at index {l} after 50 sweeps"
                )
            g = (dd[l + 1] - dd[l]) / (2.0 * ee[l])
            r = hypot(g, 1.0)
            g = dd[m] - dd[l] + ee[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                eei = ee[i]
                f = s * eei
                b = c * eei
                r = hypot(f, g)
                ee[i + 1] = r
                ae[i + 1] = r
                if r == 0.0:
                    x = dd[i + 1] - p
                    dd[i + 1] = x
                    ad[i + 1] = abs(x)
                    ee[m] = 0.0
                    ae[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = dd[i + 1] - p
                r = (dd[i] - g) * s + 2.0 * c * b
                p = s * r
                x = g + p
                dd[i + 1] = x
                ad[i + 1] = abs(x)
                g = c * r - b
            if underflow:
                continue
            x = dd[l] - p
            dd[l] = x
            ad[l] = abs(x)
            ee[l] = g
            ae[l] = abs(g)
            ee[m] = 0.0
            ae[m] = 0.0
    dd.sort()
    return np.array(dd)


def _factor_shifted(d: np.ndarray, e: np.ndarray, lam: float, tiny: float):
    """LU with partial pivoting of (T - lam*I); U has two superdiagonals."""
    n = len(d)
    u = np.empty(n)
    v = np.zeros(n)
    w = np.zeros(n)
    mults = np.empty(max(n - 1, 0))
    swaps = np.zeros(max(n - 1, 0), dtype=bool)
    p = d[0] - lam
    q = e[0] if n > 1 else 0.0
    r = 0.0
    for i in range(n - 1):
        lead = e[i]
        nd = d[i + 1] - lam
        ne = e[i + 1] if i + 1 < n - 1 else 0.0
        if abs(p) >= abs(lead):
            piv = p if abs(p) >= tiny else (tiny if p >= 0 else -tiny)
            mu = lead / piv
            u[i], v[i], w[i] = piv, q, r
            mults[i] = mu
            p = nd - mu * q
            q = ne - mu * r
            r = 0.0
        else:
            mu = p / lead
            u[i], v[i], w[i] = lead, nd, ne
            mults[i] = mu
            swaps[i] = True
            p = q - mu * nd
            q = r - mu * ne
            r = 0.0
    u[n - 1] = p if abs(p) >= tiny else (tiny if p >= 0 else -tiny)
    if n > 1:
        v[n - 1] = 0.0
    return u, v, w, mults, swaps


def _solve_factored(factored, b: np.ndarray) -> np.ndarray:
    u, v, w, mults, swaps = factored
    n = len(u)
    y = b.copy()
    for i in range(n - 1):
        if swaps[i]:
            y[i], y[i + 1] = y[i + 1], y[i]
        y[i + 1] -= mults[i] * y[i]
    x = np.empty(n)
    x[n - 1] = y[n - 1] / u[n - 1]
    if n > 1:
        x[n - 2] = (y[n - 2] - v[n - 2] * x[n - 1]) / u[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (y[i] - v[i] * x[i + 1] - w[i] * x[i + 2]) / u[i]
    return x


def _tridiag_apply(d: np.ndarray, e: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = d * x
    if len(d) > 1:
        out[:-1] += e * x[1:]
        out[1:] += e * x[:-1]
    return out


def tridiagonal_eigenvector(
    d: np.ndarray,
    e: np.ndarray,
    lam: float,
    seed_vec: np.ndarray,
    ortho: list[np.ndarray] | None = None,
    max_iters: int = 10,
) -> tuple[np.ndarray, float]:
    """Inverse iteration for one eigenvector of a tridiagonal matrix.

    ``ortho`` holds previously computed vectors of the same eigenvalue
    cluster; the iterate is re-orthogonalized against them every pass.
    Returns (unit vector, residual on the tridiagonal matrix).
    """
    n = len(d)
    scale = max(float(np.max(np.abs(d))) if n else 0.0,
                float(np.max(np.abs(e))) if len(e) else 0.0, 1.0)
    tiny = _EPS * scale
    factored = _factor_shifted(np.asarray(d, dtype=float), np.asarray(e, dtype=float), lam, tiny)
    x = seed_vec.astype(float, copy=True)
    ortho = ortho or []
    best = None
    best_res = math.inf
    for _ in range(max_iters):
        for o in ortho:
            x -= float(o @ x) * o
        norm = math.sqrt(float(x @ x))
        if norm < 1e-280:
            # cluster ate the whole iterate; restart from a shifted seed
            x = np.cos(np.arange(n) * (1.0 + len(ortho)))
            continue
        x /= norm
        y = _solve_factored(factored, x)
        ynorm = math.sqrt(float(y @ y))
        x = y / ynorm
        resid_vec = _tridiag_apply(d, e, x) - lam * x
        res = math.sqrt(float(resid_vec @ resid_vec))
        if res < best_res:
            best, best_res = x.copy(), res
        if res <= 64.0 * _EPS * scale * max(1.0, math.sqrt(n)):
            break
    x = best
    for o in ortho:
        x -= float(o @ x) * o
    norm = math.sqrt(float(x @ x))
    if norm < 1e-280:
        raise EigenSolverError(f"inverse iteration collapsed for eigenvalue {lam!r}")
    x /= norm
    resid_vec = _tridiag_apply(d, e, x) - lam * x
    return x, math.sqrt(float(resid_vec @ resid_vec))


def _seed_vector(n: int, salt: int) -> np.ndarray:
    # splitmix64-driven deterministic seed vector, no RNG state involved
    out = np.empty(n)
    z = (salt * 0x9E3779B97F4A7C15 + 0x632BE59BD9B4E019) & 0xFFFFFFFFFFFFFFFF
    for i in range(n):
        z = (z + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        t = z
        t = ((t ^ (t >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        t = ((t ^ (t >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        t ^= t >> 31
        out[i] = (t >> 11) * (2.0 ** -53) - 0.5
    return out


def tridiagonal_selected_eigenpairs(
    d: np.ndarray, e: np.ndarray, ranks: list[int]
) -> tuple[np.ndarray, dict[int, np.ndarray]]:
    """All eigenvalues plus eigenvectors at the 1-based ``ranks``.

    Vectors inside a near-degenerate cluster are computed together, with
    perturbed shifts and mutual orthogonalization, so multiplicities yield
    an orthonormal set of representatives.
    """
    n = len(d)
    evals = tridiagonal_eigenvalues(d, e)
    scale = max(float(np.max(np.abs(evals))) if n else 0.0, 1.0)
    cluster_tol = max(1e-6 * scale, 1e-8)
    vectors: dict[int, np.ndarray] = {}
    for rank in ranks:
        if not 1 <= rank <= n:
            raise ValueError(f"rank {rank} out of range 1..{n}")
        idx = rank - 1
        start = idx
        while start > 0 and evals[start] - evals[start - 1] <= cluster_tol:
            start -= 1
        ortho: list[np.ndarray] = []
        vec = None
        for j in range(start, idx + 1):
            lam = float(evals[j]) + (j - start) * 8.0 * _EPS * scale
            seed = _seed_vector(n, salt=j * 2654435761 + n)
            tvec, _ = tridiagonal_eigenvector(d, e, lam, seed, ortho=ortho)
            ortho.append(tvec)
            vec = tvec
        assert vec is not None
        vectors[rank] = vec
    return evals, vectors


def selected_eigenpairs(
    a: np.ndarray, ranks: list[int]
) -> tuple[np.ndarray, dict[int, np.ndarray]]:
    """Eigenvalues of symmetric ``a`` plus eigenvectors for 1-based ``ranks``."""
    d, e, reflectors = tridiagonalize(a)
    evals, tvecs = tridiagonal_selected_eigenpairs(d, e, ranks)
    return evals, {k: back_transform(reflectors, v) for k, v in tvecs.items()}
