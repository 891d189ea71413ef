import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiedlertree.graph import DisconnectedGraphError, Graph, NotATreeError
from fiedlertree.generators import gen_path, gen_random_tree, gen_rose_on_path
from fiedlertree.enumeration import enumerate_free_trees
from fiedlertree.spectral import (
    EigenPair,
    LaplacianOperator,
    bounds_report,
    eigenpair_k,
    eigenpair_to_dict,
    fiedler_pair,
    laplacian_dense,
    verify_fiedler_connectivity,
    verify_monotonicity,
)


def path_lambda2(n):
    return 2.0 * (1.0 - math.cos(math.pi / n))


def test_p2_eigenpair():
    pair = fiedler_pair(gen_path(2))
    assert math.isclose(pair.lam, 2.0, abs_tol=1e-12)
    assert np.allclose(np.abs(pair.phi), 1 / math.sqrt(2))
    assert pair.phi[0] > 0 > pair.phi[1]


def test_p3_lambda2():
    assert math.isclose(fiedler_pair(gen_path(3)).lam, 1.0, abs_tol=1e-12)


def test_star_degeneracy():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    pair = fiedler_pair(star)
    assert math.isclose(pair.lam, 1.0, abs_tol=1e-12)
    assert pair.gap_to_next <= 1e-12
    assert pair.degenerate


def test_star_full_spectrum():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    lams = [eigenpair_k(star, k).lam for k in range(1, 5)]
    assert np.allclose(lams, [0.0, 1.0, 1.0, 4.0], atol=1e-12)


def test_k1_constant_vector():
    g = gen_random_tree(17, seed=4)
    pair = eigenpair_k(g, 1)
    assert abs(pair.lam) < 1e-10
    assert np.allclose(pair.phi, 1 / math.sqrt(g.n), atol=1e-8)


def test_p3_third_eigenpair():
    assert math.isclose(eigenpair_k(gen_path(3), 3).lam, 3.0, abs_tol=1e-12)


@pytest.mark.parametrize("n", [2, 5, 17, 64, 200, 512])
def test_path_spectrum_formula(n):
    pair = fiedler_pair(gen_path(n))
    assert abs(pair.lam - path_lambda2(n)) < 1e-9


def test_eigenpair_errors():
    with pytest.raises(ValueError):
        fiedler_pair(gen_path(1))
    with pytest.raises(DisconnectedGraphError):
        fiedler_pair(Graph(3, [(0, 1)]))
    with pytest.raises(ValueError):
        eigenpair_k(gen_path(3), 4)
    with pytest.raises(ValueError):
        fiedler_pair(gen_path(4), method="nope")


def test_laplacian_operator_properties():
    rng = np.random.default_rng(11)
    for i in range(10):
        g = gen_random_tree(30, seed=i)
        op = LaplacianOperator(g)
        dense = laplacian_dense(g)
        x = rng.standard_normal(g.n)
        y = rng.standard_normal(g.n)
        assert np.allclose(op.apply(x), dense @ x, atol=1e-12)
        assert abs(float(x @ op.apply(y)) - float(y @ op.apply(x))) < 1e-12
        assert float(x @ op.apply(x)) >= -1e-12
        assert np.allclose(op.apply(np.ones(g.n)), 0.0)


def test_residual_and_orthogonality_invariants():
    for i in range(30):
        g = gen_random_tree(3 + i, seed=100 + i)
        pair = fiedler_pair(g)
        assert math.isclose(float(pair.phi @ pair.phi), 1.0, rel_tol=1e-10)
        assert pair.residual <= 1e-9 * max(1.0, pair.lam)
        assert abs(float(np.sum(pair.phi))) <= 1e-10 * math.sqrt(g.n)
        lead = next(v for v in range(g.n) if abs(pair.phi[v]) > 1e-8)
        assert pair.phi[lead] > 0


def test_rayleigh_minimality():
    rng = np.random.default_rng(7)
    for i in range(50):
        g = gen_random_tree(4 + (i % 37), seed=3000 + i)
        pair = fiedler_pair(g)
        if pair.degenerate:
            continue
        dense = laplacian_dense(g)
        x = rng.standard_normal((g.n, 1000))
        x -= x.mean(axis=0, keepdims=True)
        x /= np.linalg.norm(x, axis=0, keepdims=True)
        quad = np.einsum("ij,ij->j", x, dense @ x)
        assert float(quad.min()) >= pair.lam - 1e-9


def test_orientation_invariance():
    g = gen_rose_on_path(9, 3, 12)
    pair = fiedler_pair(g)
    flipped = EigenPair(
        k=2,
        lam=pair.lam,
        phi=-pair.phi,
        residual=pair.residual,
        gap_to_next=pair.gap_to_next,
        degenerate=pair.degenerate,
    )
    assert verify_fiedler_connectivity(g, pair) == verify_fiedler_connectivity(g, flipped)
    v1 = verify_monotonicity(g, pair)
    v2 = verify_monotonicity(g, flipped)
    assert v1.status == v2.status


def test_dense_vs_iterative_agreement():
    for i in range(20):
        n = 100 + (i * 97) % 401
        g = gen_random_tree(n, seed=7000 + i)
        dense = fiedler_pair(g, method="dense")
        iterative = fiedler_pair(g, method="iterative")
        assert abs(dense.lam - iterative.lam) < 1e-8
        assert np.max(np.abs(np.abs(dense.phi) - np.abs(iterative.phi))) < 1e-6


def test_connectivity_verifier_true_cases():
    assert verify_fiedler_connectivity(gen_path(4), fiedler_pair(gen_path(4)))
    for n in range(2, 11):
        for g in enumerate_free_trees(n):
            assert verify_fiedler_connectivity(g, fiedler_pair(g))


def test_connectivity_verifier_rejects_fake_vector():
    g = gen_path(4)
    fake = EigenPair(
        k=2,
        lam=1.0,
        phi=np.array([1.0, -1.0, 1.0, -1.0]) / 2.0,
        residual=0.0,
        gap_to_next=1.0,
        degenerate=False,
    )
    assert not verify_fiedler_connectivity(g, fake)


def test_monotonicity_p5():
    g = gen_path(5)
    pair = fiedler_pair(g)
    verdict = verify_monotonicity(g, pair)
    assert verdict.status == "pass"
    assert int(np.argmax(pair.phi)) in (0, 4)
    assert int(np.argmin(pair.phi)) in (0, 4)


def test_monotonicity_all_small_trees():
    for n in range(2, 11):
        for g in enumerate_free_trees(n):
            pair = fiedler_pair(g)
            verdict = verify_monotonicity(g, pair)
            if pair.degenerate:
                assert verdict.status == "inconclusive"
            else:
                assert verdict.status == "pass", (n, list(g.edges()))


def test_monotonicity_rose_extrema_on_leaves(rose_trap):
    pair = fiedler_pair(rose_trap)
    verdict = verify_monotonicity(rose_trap, pair)
    assert verdict.status == "pass"
    assert verdict.extrema_degree_one


def test_monotonicity_requires_tree():
    square = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(NotATreeError):
        verify_monotonicity(square, fiedler_pair(square))


def test_bounds_report_p10(path10):
    rep = bounds_report(path10, fiedler_pair(path10))
    assert rep.all_ok
    assert rep.diam == 9


def test_bounds_report_star50():
    star = Graph(51, [(0, i) for i in range(1, 51)])
    pair = fiedler_pair(star)
    rep = bounds_report(star, pair)
    assert math.isclose(pair.lam, 1.0, abs_tol=1e-10)
    assert rep.mckay_ok and rep.mckay_lower == pytest.approx(4.0 / (51 * 2))
    assert rep.all_ok


def test_bounds_report_small_trees():
    for n in range(2, 10):
        for g in enumerate_free_trees(n):
            assert bounds_report(g, fiedler_pair(g)).all_ok


def test_eigenpair_json_fields():
    pair = fiedler_pair(gen_path(3))
    d = eigenpair_to_dict(pair)
    assert set(d) == {"n", "k", "lambda", "residual", "gap", "phi"}
    assert d["n"] == 3 and len(d["phi"]) == 3


@given(st.integers(2, 30), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_fiedler_positive_iff_connected(n, seed):
    g = gen_random_tree(n, seed)
    pair = fiedler_pair(g)
    assert pair.lam > 0
    assert verify_fiedler_connectivity(g, pair)
