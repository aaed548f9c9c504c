import random
from itertools import combinations

import pytest

from kaug.errors import NotDeficient, NotMeetingPoint
from kaug.graph import Graph, gamma
from kaug.setpairs import (
    SetPair, all_setpairs, classify, coverage_count, covering_edges, covers, deficiency,
    deficient_setpairs, from_deficient_set, meeting_points, tail_head, uncross,
)

C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
EMPTY6 = Graph(6)


def random_graph(rng, n, p):
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def test_deficiency_examples():
    P = SetPair.of({0}, {2})
    assert deficiency(C4, 2, P) == 0
    assert deficiency(C4, 3, P) == 1


def test_covers():
    P = SetPair.of({0}, {2})
    assert covers((0, 2), P)
    assert not covers((0, 1), P)
    assert coverage_count([], P) == 0
    assert covering_edges(P, [(0, 1), (0, 2), (1, 2)]) == [(0, 2)]


def test_setpair_is_unordered():
    assert SetPair.of({3}, {0, 1}) == SetPair.of({0, 1}, {3})
    assert SetPair.of({3}, {0, 1}).first == {0, 1}


def test_from_deficient_set():
    P = from_deficient_set(C4, 3, {0})
    assert P == SetPair.of({0}, {2}) and deficiency(C4, 3, P) == 1
    P5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    P = from_deficient_set(P5, 2, {0})
    assert P == SetPair.of({0}, {2, 3, 4}) and deficiency(P5, 2, P) == 1
    K4 = Graph(4, combinations(range(4), 2))
    with pytest.raises(NotDeficient):
        from_deficient_set(K4, 3, {0})


def test_classify_examples():
    assert classify(SetPair.of({0}, {1}), SetPair.of({2}, {3})).kind == "independent"
    P, Q = SetPair.of({0}, {1, 2, 3}), SetPair.of({0, 1, 2}, {3})
    rel = classify(P, Q)
    assert rel.kind == "nested"
    assert rel.dominant == (frozenset({1, 2, 3}), frozenset({0, 1, 2}))
    assert classify(SetPair.of({0, 1}, {3, 4}), SetPair.of({1, 2}, {4, 5})).kind == "crossing"


def test_meeting_points_examples():
    assert meeting_points(SetPair.of({0}, {1}), SetPair.of({2}, {3})) == set()
    # nested: the non-dominant pieces
    P, Q = SetPair.of({0}, {1, 2, 3}), SetPair.of({0, 1, 2}, {3})
    assert meeting_points(P, Q) == {0, 3}
    P, Q = SetPair.of({0, 1}, {3, 4}), SetPair.of({1, 2}, {4, 5})
    brute = {u for u, w in combinations(range(6), 2) if covers((u, w), P) and covers((u, w), Q)}
    brute |= {w for u, w in combinations(range(6), 2) if covers((u, w), P) and covers((u, w), Q)}
    assert meeting_points(P, Q) == brute == {1, 4}


def test_uncross_nested_returns_inputs():
    P, Q = SetPair.of({0}, {1, 2, 3}), SetPair.of({0, 1, 2}, {3})
    for u in meeting_points(P, Q):
        assert set(uncross(P, Q, u).pairs()) == {P, Q}


def test_uncross_crossing_example():
    P, Q = SetPair.of({0, 1}, {3, 4}), SetPair.of({1, 2}, {4, 5})
    r = uncross(P, Q, 1)
    assert r.pairs() == (SetPair.of({0, 1, 2}, {4}), SetPair.of({1}, {3, 4, 5}))
    with pytest.raises(NotMeetingPoint):
        uncross(P, Q, 0)


def test_at_most_two_result_pairs():
    rng = random.Random(1)
    for _ in range(200):
        G = random_graph(rng, 7, 0.2)
        pairs = list(all_setpairs(G, max_n=7))
        P, Q = rng.sample(pairs, 2)
        results = {frozenset(uncross(P, Q, u).pairs()) for u in meeting_points(P, Q)}
        assert len(results) <= 2


def test_tail_head():
    assert tail_head(SetPair.of({0}, {2, 3, 4})) == ({0}, {2, 3, 4})
    assert tail_head(SetPair.of({2}, {0})) == ({0}, {2})
    t, h = tail_head(SetPair.of({5, 6}, {1}))
    assert t | h == {1, 5, 6}


def test_classify_symmetric_and_independence_iff_no_meeting_point():
    rng = random.Random(2)
    for _ in range(300):
        G = random_graph(rng, rng.randint(4, 7), 0.25)
        pairs = list(all_setpairs(G, max_n=7))
        if len(pairs) < 2:
            continue
        P, Q = rng.sample(pairs, 2)
        assert classify(P, Q).kind == classify(Q, P).kind
        both = [e for e in combinations(range(G.n), 2) if covers(e, P) and covers(e, Q)]
        assert (classify(P, Q).kind == "independent") == (not both)
        assert (not meeting_points(P, Q)) == (not both)


def test_uncrossing_laws_on_deficient_pairs():
    rng = random.Random(3)
    for _ in range(40):
        n, k = rng.randint(5, 7), rng.randint(2, 4)
        G = random_graph(rng, n, 0.3)
        pairs = deficient_setpairs(G, k, max_n=7)
        for _ in range(30):
            if len(pairs) < 2:
                break
            P, Q = rng.sample(pairs, 2)
            mps = sorted(meeting_points(P, Q))
            if not mps:
                continue
            u = rng.choice(mps)
            r = uncross(P, Q, u)
            assert not r.degenerate
            A, B = r.pairs()
            assert A.is_valid(G) and B.is_valid(G)
            assert len(P.boundary(n)) + len(Q.boundary(n)) == len(A.boundary(n)) + len(B.boundary(n))
            if classify(P, Q).kind == "crossing":
                assert deficiency(G, k, P) + deficiency(G, k, Q) <= deficiency(G, k, A) + deficiency(G, k, B)


def test_all_setpairs_brute_force_count():
    # on the empty graph every 3-labelling with both labels used is a set-pair
    n = 4
    assert len(list(all_setpairs(Graph(n)))) == (3 ** n - 2 * 2 ** n + 1) // 2
    for P in all_setpairs(C4):
        assert P.is_valid(C4)
    assert all(gamma(C4, P.first) <= len(P.boundary(4)) for P in all_setpairs(C4))
