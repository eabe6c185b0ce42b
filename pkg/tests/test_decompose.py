import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from helpers import rand_dnf, rand_form, rand_quasicomp

from semilin.core import DnfGraph, form, materialize
from semilin.decompose import (QuasiCompGraph, QuasiCompVertex, perturb,
                               split_linear, to_quasicomp, type_partition)
from semilin.errors import NotPerturbed

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def test_split_linear_examples():
    g, h = split_linear(form(x=[2, 0], y=[0, -1], c=3))
    assert g((F(5), F(0))) == 13
    assert h((F(0), F(7))) == -7
    g2, h2 = split_linear(form(x=[0], y=[-1]))
    assert g2((F(9),)) == 0 and h2((F(4),)) == -4


@settings(max_examples=100, deadline=None)
@given(st.lists(fractions, min_size=2, max_size=2),
       st.lists(fractions, min_size=2, max_size=2),
       st.data())
def test_split_linear_reconstruction(xs, ys, data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    f = rand_form(rng, 2)
    g, h = split_linear(f)
    x, y = tuple(xs), tuple(ys)
    assert f(x, y) == g(x) + h(y)


def test_to_quasicomp_total_order_term():
    D = DnfGraph(1, ((F(0),), (F(1),), (F(2),)),
                 (form(x=[1], y=[-1]),), ((0,),))
    (Q,) = to_quasicomp(D)
    assert [(v.x, v.y) for v in Q.vertices] == \
        [((F(i),), (F(i),)) for i in range(3)]
    assert Q.edge_set() == {(0, 1), (0, 2), (1, 2)}


def test_to_quasicomp_empty_terms():
    D = DnfGraph(1, ((F(0),), (F(1),)), (), ())
    assert to_quasicomp(D) == []
    assert not materialize(D).edges


def test_union_reconstruction_random():
    rng = random.Random(5)
    for _ in range(50):
        D = rand_dnf(rng, t_max=3, n_max=16)
        want = set(materialize(D).edges)
        got = set()
        for Q in to_quasicomp(D):
            got |= Q.edge_set()
        assert got == want


def test_perturb_single_vertex():
    Q = QuasiCompGraph(1, (QuasiCompVertex((F(0),), (F(0),), 0),))
    P = perturb(Q)
    assert P.vertices[0].y[0] < 0
    assert P.edge_set() == Q.edge_set() == set()


def test_perturb_two_vertices_keeps_edges():
    Q = QuasiCompGraph(1, (QuasiCompVertex((F(0),), (F(0),), 0),
                           QuasiCompVertex((F(1),), (F(1),), 1)))
    P = perturb(Q)
    assert Q.edge_set() == P.edge_set() == {(0, 1)}


def test_perturb_random_edge_invariance_and_strictness():
    rng = random.Random(13)
    for _ in range(60):
        t = rng.randint(1, 3)
        Q = rand_quasicomp(rng, t, rng.randint(1, 30))
        P = perturb(Q)
        assert P.edge_set() == Q.edge_set()
        for v in P.vertices:
            assert all(a != b for a, b in zip(v.x, v.y))


def test_perturb_kills_cross_vertex_ties():
    # y of one vertex ties the x of another; both drop strictly below
    Q = QuasiCompGraph(1, (QuasiCompVertex((F(2),), (F(5),), 0),
                           QuasiCompVertex((F(5),), (F(2),), 1)))
    P = perturb(Q)
    xs = {v.x[0] for v in P.vertices}
    ys = {v.y[0] for v in P.vertices}
    assert not xs & ys


def test_type_partition_examples():
    Q = QuasiCompGraph(1, (QuasiCompVertex((F(0),), (F(1),), 0),
                           QuasiCompVertex((F(1),), (F(0),), 1)))
    classes = type_partition(Q)
    assert classes == {(1,): [0], (-1,): [1]}
    Q2 = QuasiCompGraph(2, (QuasiCompVertex((F(0), F(0)), (F(1), F(-1)), 0),))
    assert list(type_partition(Q2)) == [(1, -1)]


def test_type_partition_requires_perturbed():
    Q = QuasiCompGraph(1, (QuasiCompVertex((F(0),), (F(0),), 0),))
    with pytest.raises(NotPerturbed):
        type_partition(Q)


def test_type_partition_sizes_sum():
    rng = random.Random(23)
    for _ in range(30):
        Q = perturb(rand_quasicomp(rng, rng.randint(1, 3), rng.randint(1, 25)))
        classes = type_partition(Q)
        assert sum(len(v) for v in classes.values()) == Q.n
        assert len(classes) <= 2 ** Q.t
