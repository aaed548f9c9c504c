import random
from itertools import combinations

import pytest

from kaug.errors import AdjacentTerminals, SizeLimit
from kaug.graph import (
    Graph, deficient_sets, edge, find_deficient_pair, gamma, is_k_connected, mask_to_set,
    min_vertex_cut, neighbors, outside, set_to_mask, subset_tables, vertex_cut,
)


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, combinations(range(n), 2))


def random_graph(rng, n, p):
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def brute_cut(G, u, w):
    others = [v for v in G.nodes if v not in (u, w)]
    for size in range(len(others) + 1):
        for C in combinations(others, size):
            C = set(C)
            seen, stack = {u}, [u]
            while stack:
                a = stack.pop()
                for b in G.adj(a):
                    if b not in C and b not in seen:
                        seen.add(b)
                        stack.append(b)
            if w not in seen:
                return size
    raise AssertionError


def test_edge_normalises_and_rejects_loops():
    assert edge(3, 1) == (1, 3)
    with pytest.raises(ValueError):
        edge(2, 2)


def test_graph_rejects_out_of_range_and_dedupes():
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    G = Graph(3, [(0, 1), (1, 0)])
    assert G.edges == {(0, 1)}
    assert G == Graph(3, [(1, 0)])


def test_neighbors_and_outside():
    P3 = Graph(3, [(0, 1), (1, 2)])
    assert neighbors(P3, {0}) == {1}
    assert neighbors(P3, set(range(3))) == set()
    C4 = cycle(4)
    assert neighbors(C4, {0}) == {1, 3}
    assert outside(C4, {0}) == {2}
    assert outside(C4, range(4)) == set()
    assert outside(complete(4), {0}) == set()


def test_min_vertex_cut_examples():
    cut = min_vertex_cut(cycle(4), 0, 2)
    assert cut.value == 2 and cut.cut_nodes == {1, 3}
    three_paths = Graph(5, [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)])
    assert min_vertex_cut(three_paths, 0, 4).value == 3
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    cut = min_vertex_cut(star, 1, 2)
    assert cut.value == 1 and cut.cut_nodes == {0}


def test_adjacent_terminals():
    with pytest.raises(AdjacentTerminals):
        min_vertex_cut(cycle(4), 0, 1)


def test_is_k_connected_examples():
    assert is_k_connected(complete(4), 3)
    assert is_k_connected(cycle(5), 2)
    assert not is_k_connected(cycle(5), 3)
    for k in range(1, 6):
        assert is_k_connected(complete(k + 1), k)
    assert not is_k_connected(complete(3), 3)


def test_deficient_sets_examples():
    assert deficient_sets(complete(4), 3, 3) == []
    assert sorted(deficient_sets(cycle(4), 3, 2)) == [frozenset({v}) for v in range(4)]
    assert deficient_sets(cycle(4), 2, 3) == []
    with pytest.raises(SizeLimit):
        deficient_sets(complete(30), 2, 15, budget=1000)


def test_cut_value_matches_brute_force():
    rng = random.Random(1)
    for _ in range(60):
        G = random_graph(rng, rng.randint(3, 9), rng.uniform(0.2, 0.7))
        for u, w in G.non_edges()[:4]:
            assert min_vertex_cut(G, u, w).value == brute_cut(G, u, w)


def test_cut_separates_and_source_side_is_minimal():
    rng = random.Random(2)
    for _ in range(40):
        G = random_graph(rng, rng.randint(4, 8), rng.uniform(0.2, 0.6))
        for u, w in G.non_edges()[:3]:
            cut = min_vertex_cut(G, u, w)
            S = cut.source_side
            assert u in S and w in cut.sink_side
            assert neighbors(G, S) == cut.cut_nodes
            # no smaller source side achieves the same value
            rest = [v for v in S if v != u]
            for size in range(len(rest)):
                for sub in combinations(rest, size):
                    T = {u, *sub}
                    if w not in neighbors(G, T) | T:
                        assert gamma(G, T) > cut.value


def test_k_connected_iff_no_deficient_set():
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randint(2, 9)
        G = random_graph(rng, n, rng.uniform(0.3, 0.9))
        k = rng.randint(1, 4)
        expected = n >= k + 1 and not deficient_sets(G, k, n)
        assert is_k_connected(G, k) == expected
        if n >= k + 1:
            assert (find_deficient_pair(G, k) is None) == expected


def test_fractional_cut_counts_extra_edges():
    P3 = Graph(3, [(0, 1), (1, 2)])
    from fractions import Fraction
    assert vertex_cut(P3, 0, 2, {(0, 2): Fraction(1, 3)}).value == Fraction(4, 3)
    assert vertex_cut(P3, 0, 2, {(0, 2): Fraction(1, 3)}, below=1) is None


def test_subset_tables_match_gamma():
    rng = random.Random(4)
    G = random_graph(rng, 8, 0.4)
    nb, sizes = subset_tables(G)
    for m in range(1 << 8):
        U = mask_to_set(m)
        assert set_to_mask(U) == m
        assert mask_to_set(int(nb[m])) == neighbors(G, U)
        assert sizes[m] == gamma(G, U)


def test_submodularity_of_gamma():
    rng = random.Random(5)
    for _ in range(300):
        G = random_graph(rng, rng.randint(3, 8), rng.uniform(0.2, 0.6))
        U = {v for v in G.nodes if rng.random() < 0.5}
        W = {v for v in G.nodes if rng.random() < 0.5}
        assert gamma(G, U) + gamma(G, W) >= gamma(G, U & W) + gamma(G, U | W)
        assert gamma(G, U) + gamma(G, W) >= gamma(G, outside(G, U) & W) + gamma(G, U & outside(G, W))
