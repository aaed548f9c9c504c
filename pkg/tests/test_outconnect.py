import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from kaug.errors import BadTerminalCount, Infeasible
from kaug.graph import Graph
from kaug.outconnect import (
    Digraph, brute_force_outconnectivity, is_k_outconnected, rooted, rooted_digraph,
    solve_directed_outconnectivity,
)


def test_is_k_outconnected_examples():
    for k in range(1, 4):
        assert is_k_outconnected(Digraph(k + 1, permutations(range(k + 1), 2)), 0, k)
    cyc = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert is_k_outconnected(cyc, 2, 1)
    assert not is_k_outconnected(cyc, 2, 2)
    K4 = Digraph(4, permutations(range(4), 2))
    assert all(is_k_outconnected(K4, r, 3) for r in range(4))


def test_already_outconnected_needs_nothing():
    star = Digraph(4, [(0, 1), (0, 2), (0, 3)])
    costs = {(a, b): 1 for a, b in permutations(range(1, 4), 2)}
    sol = solve_directed_outconnectivity(star, costs, 0, 1)
    assert sol.arcs == set() and sol.cost == 0


def test_directed_solver_matches_brute_force():
    rng = random.Random(11)
    checked = 0
    for _ in range(40):
        n, k = rng.randint(3, 5), rng.randint(1, 2)
        arcs = [a for a in permutations(range(n), 2) if rng.random() < 0.3]
        D = Digraph(n, arcs)
        costs = {a: Fraction(rng.randint(1, 6)) for a in permutations(range(n), 2)
                 if a not in D.arcs and rng.random() < 0.7}
        try:
            best = brute_force_outconnectivity(D, costs, 0, k)
        except Infeasible:
            with pytest.raises(Infeasible):
                solve_directed_outconnectivity(D, costs, 0, k)
            continue
        sol = solve_directed_outconnectivity(D, costs, 0, k)
        assert sol.cost == best[0]
        assert sol.lp_bound <= sol.cost
        assert is_k_outconnected(Digraph(n, D.arcs | sol.arcs), 0, k)
        checked += 1
    assert checked >= 15


def test_rooted_digraph_shape():
    G = Graph(3, [(0, 1)])
    D, arc_costs, root = rooted_digraph(G, {(0, 2): 4, (1, 2): 1}, {0, 2})
    assert root == 3
    assert {(0, 1), (1, 0), (3, 0), (3, 2)} == D.arcs
    assert arc_costs == {(0, 2): 4, (2, 0): 4, (1, 2): 1, (2, 1): 1}


def test_rooted_on_k_connected_graph_is_free():
    K4 = Graph(4, combinations(range(4), 2))
    res = rooted(K4, {}, {0, 1, 2}, 3)
    assert res.edges == set() and res.cost == 0


def test_rooted_path_example():
    P4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    costs = {e: 1 for e in P4.non_edges()}
    res = rooted(P4, costs, {0, 3}, 2)
    # the only optimum of the full problem buys one edge (0, 3)
    assert res.cost <= 2 * 1
    D, arc_costs, root = rooted_digraph(P4, costs, {0, 3})
    arcs = set(D.arcs) | {(u, v) for u, v in res.edges} | {(v, u) for u, v in res.edges}
    assert is_k_outconnected(Digraph(5, arcs), root, 2)


def test_rooted_terminal_count():
    with pytest.raises(BadTerminalCount):
        rooted(Graph(4), {}, {0}, 2)


def test_rooted_counts_each_edge_once():
    G = Graph(3)
    res = rooted(G, {(0, 1): 1, (0, 2): 1, (1, 2): 1}, {0}, 1)
    assert res.cost == sum(1 for _ in res.edges)
