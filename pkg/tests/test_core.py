import random
from fractions import Fraction as F

import pytest
from helpers import brute_epsilon, rand_symmetric_semilinear, shift_edges_by_rule

from semilin.core import (EQ, LT, And, Atom, DnfGraph, Not, Or,
                          SemilinearGraph, epsilon_for, eval_edge, form,
                          materialize, symmetry_check, to_dnf)
from semilin.errors import InvalidPair, SymmetryError


def leaf_graph(f, rel, verts, dim=1):
    vs = tuple(tuple(F(c) for c in v) for v in verts)
    return SemilinearGraph(dim, vs, (f,), Atom(0, rel))


def test_eval_edge_symmetric_constant_form():
    # f(x, y) = x0 + y0 - 1 is its own mirror; both vertices at 0
    G = leaf_graph(form(x=[1], y=[1], c=-1), LT, [(0,), (0,)])
    assert symmetry_check(G) is None
    assert eval_edge(G, 0, 1) is True
    assert eval_edge(G, 1, 0) is True


def test_eval_edge_rejects_self_pair():
    G = leaf_graph(form(x=[1], y=[1], c=-1), LT, [(0,), (1,)])
    with pytest.raises(InvalidPair):
        eval_edge(G, 1, 1)
    with pytest.raises(IndexError):
        eval_edge(G, 0, 5)


def test_symmetry_counterexample_for_strict_order():
    G = leaf_graph(form(x=[1], y=[-1]), LT, [(0,), (1,)])
    assert symmetry_check(G) == (0, 1)
    with pytest.raises(SymmetryError):
        to_dnf(G)
    with pytest.raises(SymmetryError):
        materialize(G)


def test_symmetry_ok_for_two_direction_order():
    f1, f2 = form(x=[1], y=[-1]), form(x=[-1], y=[1])
    G = SemilinearGraph(1, ((F(0),), (F(1),), (F(2),)), (f1, f2),
                        Or((Atom(0, LT), Atom(1, LT))))
    assert symmetry_check(G) is None
    assert len(materialize(G).edges) == 3  # complete


def shift_semilinear(m, k=2):
    from semilin.construct import shift_graph
    return shift_graph(m, k)


def test_shift_graph_eval_examples():
    G = shift_semilinear(4)
    verts = {tuple(int(c) for c in v): i for i, v in enumerate(G.vertices)}
    assert eval_edge(G, verts[(1, 2)], verts[(2, 3)]) is True
    assert eval_edge(G, verts[(1, 2)], verts[(3, 4)]) is False


@pytest.mark.parametrize("m", [3, 4, 5])
def test_shift_graph_materialize_matches_rule(m):
    G = shift_semilinear(m)
    assert set(materialize(G).edges) == shift_edges_by_rule(m, 2)


def test_epsilon_examples():
    # pair values of f = x0 + y0 over {4/15, 1/15, -7/15}: {1/3, -1/5, -2/5}
    G = leaf_graph(form(x=[1], y=[1]), LT, [(F(4, 15),), (F(1, 15),),
                                            (F(-7, 15),)])
    assert epsilon_for(G) == F(1, 10)
    assert brute_epsilon(G) == F(1, 10)
    # all values zero: fallback 1
    G0 = leaf_graph(form(x=[0], y=[0]), LT, [(0,), (1,)])
    assert epsilon_for(G0) == 1


def test_epsilon_matches_bruteforce_on_random_graphs():
    rng = random.Random(7)
    for _ in range(40):
        G = rand_symmetric_semilinear(rng, n_max=12)
        assert epsilon_for(G) == brute_epsilon(G)


def test_to_dnf_eq_atom():
    # f = x0 + y0 - 4 equals 0 on the cross pair, 4 on one self-ish pair
    f = form(x=[1], y=[1], c=-4)
    G = leaf_graph(f, EQ, [(0,), (4,), (8,)])
    D = to_dnf(G)
    assert materialize(D) == materialize(G)
    # every term has two atoms (f - eps < 0 and -f - eps < 0)
    assert all(len(t) == len(D.terms[0]) for t in D.terms)


def test_to_dnf_negated_strict():
    f = form(x=[1], y=[1], c=-1)
    G = SemilinearGraph(1, ((F(0),), (F(2),)), (f,), Not(Atom(0, LT)))
    D = to_dnf(G)
    assert materialize(D) == materialize(G)
    assert len(D.terms) == 1 and len(D.terms[0]) == 1


def test_to_dnf_padding_uniform_width():
    a, b, c = (form(x=[1], y=[1], c=-1), form(x=[1], y=[1], c=-2),
               form(x=[1], y=[1], c=-3))
    G = SemilinearGraph(1, ((F(0),), (F(1),)), (a, b, c),
                        Or((And((Atom(0, LT), Atom(1, LT))), Atom(2, "le"))))
    D = to_dnf(G)
    assert len(D.terms) == 2
    widths = {len(t) for t in D.terms}
    assert widths == {2}
    assert materialize(D) == materialize(G)


def test_dnf_round_trip_random():
    rng = random.Random(11)
    for _ in range(60):
        G = rand_symmetric_semilinear(rng, n_max=14)
        D = to_dnf(G)
        assert materialize(D) == materialize(G)
        assert symmetry_check(D) is None


def test_epsilon_soundness_per_atom():
    rng = random.Random(3)
    for _ in range(25):
        G = rand_symmetric_semilinear(rng, n_max=10)
        eps = epsilon_for(G)
        for u in range(G.n):
            for v in range(G.n):
                if u == v:
                    continue
                for f in G.forms:
                    val = f(G.vertices[u], G.vertices[v])
                    assert (val <= 0) == (val - eps < 0)


def test_materialize_empty_and_self_loop_free():
    G = leaf_graph(form(x=[1], y=[1], c=-1), LT, [])
    A = materialize(G)
    assert A.n == 0 and not A.edges


def test_dnf_graph_edge_rule_direct():
    # single mirrored-pair term: x0 < y0 or y0 < x0, i.e. distinct values
    D = DnfGraph(1, ((F(0),), (F(0),), (F(3),)),
                 (form(x=[1], y=[-1]), form(x=[-1], y=[1])), ((0,), (1,)))
    A = materialize(D)
    assert A.edges == frozenset({(0, 2), (1, 2)})
