import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiedlertree.graph import (
    DisconnectedGraphError,
    EdgeListParseError,
    Graph,
    GraphError,
    NotATreeError,
    bfs_distances,
    decompose_along_path,
    diameter_and_diametral_pairs,
    format_edge_list,
    is_connected,
    is_tree,
    longest_path,
    max_degree,
    parse_edge_list,
    tree_path,
)
from fiedlertree.generators import gen_path, gen_random_tree, gen_rose_on_path
from fiedlertree.enumeration import enumerate_free_trees


def test_parse_smallest_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3 and g.m == 2
    assert g.degrees() == (1, 2, 1)


def test_parse_rejects_duplicate_edge():
    with pytest.raises(EdgeListParseError) as err:
        parse_edge_list("0 1\n0 1")
    assert err.value.lineno == 2


def test_parse_rejects_reversed_duplicate():
    with pytest.raises(EdgeListParseError):
        parse_edge_list("0 1\n1 0")


def test_parse_rejects_self_loop_and_garbage():
    with pytest.raises(EdgeListParseError):
        parse_edge_list("2 2")
    with pytest.raises(EdgeListParseError):
        parse_edge_list("1 two")
    with pytest.raises(EdgeListParseError):
        parse_edge_list("1 2 3")
    with pytest.raises(EdgeListParseError):
        parse_edge_list("-1 0")
    with pytest.raises(EdgeListParseError):
        parse_edge_list("# nothing here\n\n")


def test_parse_comments_and_blank_lines():
    g = parse_edge_list("# a path\n0 1\n\n1 2  # tail edge\n")
    assert g.m == 2


def test_parse_rose_trap(rose_trap):
    text = format_edge_list(rose_trap)
    g = parse_edge_list(text)
    assert g.n == 23 and g.m == 22
    assert g == rose_trap


def test_graph_is_immutable():
    g = gen_path(3)
    with pytest.raises(AttributeError):
        g.n = 5


def test_is_tree():
    assert is_tree(gen_path(3))
    assert not is_tree(Graph(3, [(0, 1), (1, 2), (0, 2)]))


def test_is_tree_rose_trap(rose_trap):
    assert rose_trap.m == rose_trap.n - 1
    assert is_tree(rose_trap)


def test_bfs_distances():
    assert bfs_distances(gen_path(3), 0) == [0, 1, 2]
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert bfs_distances(star, 1) == [1, 0, 2, 2]


def test_bfs_disconnected_raises():
    g = Graph(3, [(0, 1)])
    assert not is_connected(g)
    with pytest.raises(DisconnectedGraphError):
        bfs_distances(g, 0)


def test_diameter_path():
    d, pairs = diameter_and_diametral_pairs(gen_path(7))
    assert d == 6 and pairs == {(0, 6)}


def test_diameter_star_all_leaf_pairs():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    d, pairs = diameter_and_diametral_pairs(star)
    assert d == 2 and pairs == {(1, 2), (1, 3), (2, 3)}


def test_diameter_rose_trap(rose_trap):
    d, pairs = diameter_and_diametral_pairs(rose_trap)
    assert d == 9 and pairs == {(0, 9)}


def test_longest_path_examples(rose_trap):
    assert longest_path(gen_path(5)) == (0, 1, 2, 3, 4)
    assert longest_path(rose_trap) == tuple(range(10))
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert longest_path(star) == (1, 0, 2)


def test_longest_path_rejects_non_tree():
    with pytest.raises(NotATreeError):
        longest_path(Graph(3, [(0, 1), (1, 2), (0, 2)]))


def test_longest_path_attains_diameter_on_all_small_free_trees():
    for n in range(2, 11):
        for g in enumerate_free_trees(n):
            d, _ = diameter_and_diametral_pairs(g)
            path = longest_path(g)
            assert len(path) == d + 1
            for a, b in zip(path, path[1:]):
                assert b in g.adj[a]


def test_decompose_bare_path():
    g = gen_path(6)
    dec = decompose_along_path(g, range(6))
    assert dec.diameter == 5
    assert all(len(row) == 0 for row in dec.attachments)


def test_decompose_rose_trap(rose_trap):
    dec = decompose_along_path(rose_trap, longest_path(rose_trap))
    comps = list(dec.all_components())
    assert len(comps) == 1
    comp = comps[0]
    assert comp.anchor_position == 3
    assert comp.size == 13
    assert comp.isolated
    assert comp.vertices == frozenset(range(10, 23))


def test_decompose_cycle_non_isolated():
    square = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    dec = decompose_along_path(square, [0, 1, 2])
    comps = list(dec.all_components())
    assert len(comps) == 1
    assert not comps[0].isolated


def test_decompose_rejects_bad_path():
    g = gen_path(4)
    with pytest.raises(GraphError):
        decompose_along_path(g, [0, 2])
    with pytest.raises(GraphError):
        decompose_along_path(g, [0, 1, 0])


def test_decompose_partitions_vertices():
    for i in range(25):
        g = gen_random_tree(3 + i, seed=500 + i)
        dec = decompose_along_path(g, longest_path(g))
        covered = set(dec.path)
        for comp in dec.all_components():
            assert not (covered & comp.vertices)
            covered |= comp.vertices
        assert covered == set(range(g.n))


def test_every_attachment_isolated_on_trees():
    for n in range(2, 10):
        for g in enumerate_free_trees(n):
            dec = decompose_along_path(g, longest_path(g))
            assert all(c.isolated for c in dec.all_components())


def test_max_degree():
    assert max_degree(gen_path(3)) == 2
    assert max_degree(Graph(6, [(0, i) for i in range(1, 6)])) == 5


def test_max_degree_rose_trap(rose_trap):
    assert max_degree(rose_trap) == 13


def test_tree_path_endpoints():
    g = gen_rose_on_path(5, 2, 3)
    p = tree_path(g, 6, 5)
    assert p[0] == 6 and p[-1] == 5
    for a, b in zip(p, p[1:]):
        assert b in g.adj[a]


@given(st.integers(2, 40), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_random_tree_invariants(n, seed):
    g = gen_random_tree(n, seed)
    assert g.m == g.n - 1
    assert is_tree(g)
    d, pairs = diameter_and_diametral_pairs(g)
    path = longest_path(g)
    assert len(path) == d + 1
    u, v = min(pairs)
    assert len(tree_path(g, u, v)) == d + 1
