import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from kaug.errors import EmptySupport, Infeasible
from kaug.graph import Graph, is_k_connected
from kaug.lp import HALF, FractionalSolution, LPVCSolver, max_fractional_edge, separate, solve_lpvc
from kaug.setpairs import deficiency, deficient_setpairs
from kaug.simplex import CutLP


def random_graph(rng, n, p):
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def test_cutlp_small_program():
    lp = CutLP([Fraction(1), Fraction(2), Fraction(3)])
    lp.add_row({0: 1, 1: 1}, 1)
    lp.add_row({1: 1, 2: 1}, 1)
    assert lp.solve()
    assert lp.objective == 2
    assert lp.solution() == [1, 0, 0] or lp.solution() == [0, 1, 0]


def test_cutlp_fractional_vertex_and_bounds():
    # triangle cover: x01 + x02 >= 1, x01 + x12 >= 1, x02 + x12 >= 1 -> all 1/2
    lp = CutLP([Fraction(1)] * 3)
    lp.add_row({0: 1, 1: 1}, 1)
    lp.add_row({0: 1, 2: 1}, 1)
    lp.add_row({1: 1, 2: 1}, 1)
    assert lp.solve()
    assert lp.objective == Fraction(3, 2)
    assert lp.solution() == [HALF] * 3


def test_cutlp_infeasible_with_upper_bounds():
    lp = CutLP([Fraction(1)])
    lp.add_row({0: 1}, 2)
    assert not lp.solve()


def test_cutlp_copy_is_independent():
    lp = CutLP([Fraction(1), Fraction(1)])
    lp.add_row({0: 1, 1: 1}, 1)
    lp.solve()
    child = lp.copy()
    child.add_row({0: -1}, 0)
    child.add_row({1: -1}, 0)
    assert not child.solve()
    assert lp.objective == 1


def test_separate_examples():
    G = Graph(4, [(0, 1)])
    x = {e: Fraction(1) for e in G.non_edges()}
    assert separate(G, 3, x).feasible
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    res = separate(two_triangles, 1, {})
    assert not res.feasible
    P = res.setpair
    assert deficiency(two_triangles, 1, P) == 1
    assert {frozenset(P.first), frozenset(P.second)} == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    assert res.slack == -1


def test_separation_agrees_with_enumeration():
    rng = random.Random(7)
    for _ in range(40):
        n, k = rng.randint(4, 7), rng.randint(1, 3)
        G = random_graph(rng, n, 0.3)
        x = {e: Fraction(rng.randint(0, 4), 4) for e in G.non_edges()}
        slacks = [sum((v for e, v in x.items() if P.covered_by(e)), Fraction(0)) - deficiency(G, k, P)
                  for P in deficient_setpairs(G, k)]
        res = separate(G, k, x)
        worst = min(slacks, default=0)
        if worst >= 0:
            assert res.feasible
        else:
            assert res.slack == worst and res.setpair.is_valid(G)


def test_lp_k_connected_graph_is_zero():
    K4 = Graph(4, combinations(range(4), 2))
    res = solve_lpvc(K4, 3, {})
    assert res.objective == 0 and res.x.support == []


def test_lp_path_example():
    P3 = Graph(3, [(0, 1), (1, 2)])
    res = solve_lpvc(P3, 2, {(0, 2): 5, (0, 1): math.inf})
    assert res.x[(0, 2)] == 1 and res.objective == 5


def test_lp_infeasible():
    with pytest.raises(Infeasible):
        solve_lpvc(Graph(3, [(0, 1)]), 2, {(0, 2): 1})
    with pytest.raises(Infeasible):
        solve_lpvc(Graph(2), 2, {(0, 1): 1})


def test_lp_solution_feasible_for_every_setpair():
    rng = random.Random(8)
    for _ in range(30):
        n, k = rng.randint(4, 7), rng.randint(1, 3)
        G = random_graph(rng, n, 0.3)
        costs = {e: rng.randint(1, 9) for e in G.non_edges()}
        if not is_k_connected(G.with_edges(costs), k):
            continue
        res = solve_lpvc(G, k, costs)
        assert all(0 <= v <= 1 for v in res.x.values.values())
        for P in deficient_setpairs(G, k):
            assert res.x.cover(P) >= deficiency(G, k, P)
        assert res.objective == sum(costs[e] * v for e, v in res.x.values.items())


def test_fix_branches_and_keeps_parent():
    G = Graph(4, [(0, 1), (1, 2), (2, 3)])
    solver = LPVCSolver(G, 2, {(0, 3): 1, (0, 2): 1, (1, 3): 1})
    base = solver.solve().objective
    forced = solver.fix((0, 3), 0)
    assert forced.solve().objective >= base
    assert forced.current()[(0, 3)] == 0
    assert solver.lp.objective == base


def test_dump_lp_lists_rows():
    P3 = Graph(3, [(0, 1), (1, 2)])
    solver = LPVCSolver(P3, 2, {(0, 2): Fraction(5, 2)})
    solver.solve()
    text = solver.dump_lp()
    assert "Minimize" in text and "5/2 x_0_2" in text and "x_0_2 >= 1" in text


def test_max_fractional_edge():
    assert max_fractional_edge({(0, 1): Fraction(3, 4)}) == ((0, 1), Fraction(3, 4))
    e, v = max_fractional_edge({(0, 1): Fraction(1, 3), (1, 2): Fraction(2, 5)})
    assert v < HALF and e == (1, 2)
    assert max_fractional_edge({(2, 3): HALF, (0, 4): HALF})[0] == (0, 4)
    with pytest.raises(EmptySupport):
        max_fractional_edge(FractionalSolution({(0, 1): Fraction(0)}))
