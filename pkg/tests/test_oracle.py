import random

import pytest
from helpers import cograph_edges, rand_cotree

from semilin.core import AdjacencyGraph
from semilin.coloring import Coloring
from semilin.errors import OverBudget
from semilin.oracle import (OracleBudget, chromatic_exhaustive,
                            clique_exhaustive, exact_chromatic, find_p4,
                            girth, girth_via_edge_removal, has_K22,
                            incidence_check, is_cograph_induced, is_proper,
                            max_clique, max_independent_set)
from semilin.ramsey import JoinNode, Leaf, UnionNode


def cycle(n):
    return AdjacencyGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return AdjacencyGraph(n, [(i, j) for i in range(n)
                              for j in range(i + 1, n)])


def rand_graph(rng, n, p=0.4):
    return AdjacencyGraph(n, [(u, v) for u in range(n)
                              for v in range(u + 1, n) if rng.random() < p])


def test_exact_chromatic_classics():
    assert exact_chromatic(cycle(5)) == 3
    assert exact_chromatic(complete(4)) == 4
    assert exact_chromatic(AdjacencyGraph(3, [])) == 1
    assert exact_chromatic(AdjacencyGraph(0, [])) == 0


def test_exact_chromatic_cross_check():
    rng = random.Random(2)
    for _ in range(80):
        G = rand_graph(rng, rng.randint(1, 8), p=0.45)
        assert exact_chromatic(G) == chromatic_exhaustive(G)


def test_exact_chromatic_budget_refusal():
    with pytest.raises(OverBudget):
        exact_chromatic(complete(17))


def test_max_clique_classics():
    assert len(max_clique(complete(5))) == 5
    assert len(max_independent_set(complete(5))) == 1
    assert len(max_clique(cycle(6))) == 2
    assert len(max_independent_set(cycle(6))) == 3


def test_max_clique_cross_check_and_duality():
    rng = random.Random(4)
    for _ in range(40):
        G = rand_graph(rng, rng.randint(1, 12))
        w = max_clique(G)
        assert w == sorted(w)
        assert len(w) == len(clique_exhaustive(G))
        assert len(max_independent_set(G)) == len(max_clique(G.complement()))
        for i, u in enumerate(w):
            for v in w[i + 1:]:
                assert G.has_edge(u, v)


def test_girth_classics():
    assert girth(cycle(7)) == 7
    tree = AdjacencyGraph(5, [(0, 1), (0, 2), (1, 3), (1, 4)])
    assert girth(tree) == float("inf")
    assert girth_via_edge_removal(tree) == float("inf")


def test_girth_cross_check_random():
    rng = random.Random(6)
    for _ in range(60):
        G = rand_graph(rng, rng.randint(1, 12), p=0.3)
        assert girth(G) == girth_via_edge_removal(G)


def test_has_k22():
    assert has_K22(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]) == (0, 1, 0, 1)
    assert has_K22(3, 2, [(0, 0), (1, 0), (2, 1)]) is None


def test_k22_iff_bipartite_girth_four():
    rng = random.Random(10)
    for _ in range(40):
        na, nb = rng.randint(1, 6), rng.randint(1, 6)
        edges = [(a, b) for a in range(na) for b in range(nb)
                 if rng.random() < 0.4]
        bip = AdjacencyGraph(na + nb, [(a, na + b) for a, b in edges])
        assert (has_K22(na, nb, edges) is not None) == (girth(bip) == 4)


def test_is_cograph_induced():
    tri = complete(3)
    assert is_cograph_induced(tri, JoinNode((Leaf(0), Leaf(1), Leaf(2)))) is None
    edge = AdjacencyGraph(2, [(0, 1)])
    bad = is_cograph_induced(edge, UnionNode((Leaf(0), Leaf(1))))
    assert bad == ("union", 0, 1)


def test_cograph_structural_check_agrees_with_p4_scan():
    rng = random.Random(12)
    for _ in range(30):
        m = rng.randint(1, 12)
        tree = rand_cotree(rng, list(range(m)))
        G = AdjacencyGraph(m, list(cograph_edges(tree)))
        assert is_cograph_induced(G, tree) is None
        assert find_p4(G, range(m)) is None


def test_find_p4_detects_paths():
    p4 = AdjacencyGraph(4, [(0, 1), (1, 2), (2, 3)])
    assert find_p4(p4, range(4)) == (0, 1, 2, 3)
    with pytest.raises(OverBudget):
        find_p4(complete(3), range(3), limit=2)


def test_is_proper():
    K2 = AdjacencyGraph(2, [(0, 1)])
    assert is_proper(K2, Coloring({0: 0, 1: 0}, 1)) == (0, 1)
    assert is_proper(K2, Coloring({0: 0, 1: 1}, 2)) is None
    assert is_proper(AdjacencyGraph(3, []), Coloring({i: 0 for i in range(3)},
                                                     1)) is None


def test_incidence_check():
    from semilin.coloring import box
    pts = [(1, 1), (0, 0)]
    from fractions import Fraction as F
    pts = [(F(1, 2), F(1, 2)), (F(0), F(0))]
    rects = [box([0, 0], [1, 1])]
    assert incidence_check(pts, rects, {(0, 0)}) is None
    diff = incidence_check(pts, rects, {(0, 0), (1, 0)})
    assert diff == {"missing": [], "extra": [(1, 0)]}
