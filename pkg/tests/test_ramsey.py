import math
import random
from fractions import Fraction as F

import pytest
from helpers import (cograph_edges, rand_cotree, rand_dnf, rand_quasicomp,
                     sorted_leaves)

from semilin.core import AdjacencyGraph, DnfGraph, form, materialize
from semilin.decompose import QuasiCompGraph, QuasiCompVertex
from semilin.errors import InvalidCotree, PreconditionViolated
from semilin.exact import sum_tenth_roots_at_least_one
from semilin.oracle import is_cograph_induced
from semilin.ramsey import (CaseI, CaseII, JoinNode, Leaf, RamseyWitness,
                            UnionNode, WeightFunction, caseI_threshold,
                            cograph_witness, cotree_leaves, eh_decompose,
                            find_cograph, ramsey_witness, validate_outcome)


# -- weight decomposition -----------------------------------------------------

def wf(t, items):
    return WeightFunction(t, {m: F(a, b) for m, (a, b) in items.items()})


def test_eh_base_caseII_heavy_singletons():
    out = eh_decompose(wf(2, {0b01: (9, 20), 0b10: (9, 20)}))
    assert isinstance(out, CaseII)
    assert set(out.families) == {frozenset({0b01}), frozenset({0b10})}
    assert sum_tenth_roots_at_least_one([F(9, 20), F(9, 20)])


def test_eh_base_caseI_uniform():
    out = eh_decompose(wf(2, {m: (9, 40) for m in range(4)}))
    assert isinstance(out, CaseI)


def test_eh_t3_singleton_families():
    # weight 4/25 on every singleton and co-singleton: balanced (each
    # halfspace carries 12/25 <= 1/2), total 24/25 >= 9/10, and all three
    # singletons are heavy against (2/3)**10, so two singleton families win.
    # (Splitting 9/10 over the three singletons alone would break balance.)
    items = {}
    for i in range(3):
        items[1 << i] = (4, 25)
        items[0b111 ^ (1 << i)] = (4, 25)
    out = eh_decompose(wf(3, items))
    assert isinstance(out, CaseII)
    assert len(out.families) == 2
    assert all(len(fam) == 1 for fam in out.families)
    assert all(next(iter(fam)).bit_count() == 1 for fam in out.families)


def test_eh_rejects_bad_inputs():
    with pytest.raises(PreconditionViolated):
        eh_decompose(wf(1, {0b1: (1, 1)}))
    with pytest.raises(PreconditionViolated):
        eh_decompose(wf(2, {0b11: (19, 20)}))  # halfspace above 1/2
    with pytest.raises(PreconditionViolated):
        eh_decompose(wf(2, {0b01: (1, 10)}))  # total below 9/10


def test_caseI_threshold_exceeds_one_tenth():
    for t in range(2, 12):
        assert caseI_threshold(t) > F(1, 10)


def rand_balanced_weights(rng, t):
    """Random balanced weight function with total in [9/10, 1]."""
    raw = {m: F(rng.randint(0, 20), 1) for m in range(1 << t)
           if rng.random() < 0.7}
    full = (1 << t) - 1
    if rng.random() < 0.5:
        # exact complement symmetry balances every halfspace at total/2
        raw = {m: raw.get(m, F(0)) + raw.get(full ^ m, F(0))
               for m in range(1 << t)}
    total = sum(raw.values(), F(0))
    if total == 0:
        raw = {0: F(1), full: F(1)}
        total = F(2)
    target = F(rng.randint(90, 100), 100)
    w = {m: v * target / total for m, v in raw.items() if v > 0}
    wfn = WeightFunction(t, w)
    if not wfn.is_balanced():
        half = {}
        for m, v in w.items():
            half[m] = half.get(m, F(0)) + v / 2
            half[full ^ m] = half.get(full ^ m, F(0)) + v / 2
        wfn = WeightFunction(t, {m: v for m, v in half.items() if v > 0})
    return wfn


def test_eh_outcomes_valid_on_random_weights():
    rng = random.Random(99)
    for _ in range(300):
        t = rng.randint(2, 6)
        wfn = rand_balanced_weights(rng, t)
        out = eh_decompose(wfn)
        validate_outcome(wfn, out)  # raises on any broken guarantee


# -- cotrees and witnesses ------------------------------------------------------

def test_cograph_witness_join_of_leaves():
    tree = JoinNode(tuple(Leaf(v) for v in range(4)))
    w = cograph_witness(tree)
    assert w.kind == "clique" and len(w.vertices) == 4


def test_cograph_witness_union_of_joins():
    tree = UnionNode((JoinNode((Leaf(0), Leaf(1), Leaf(2))),
                      JoinNode((Leaf(3), Leaf(4), Leaf(5)))))
    w = cograph_witness(tree)
    assert w.kind == "clique" and len(w.vertices) == 3


def test_cograph_witness_rejects_duplicates():
    with pytest.raises(InvalidCotree):
        cograph_witness(UnionNode((Leaf(0), Leaf(0))))
    with pytest.raises(InvalidCotree):
        cograph_witness(UnionNode(()))


def test_cograph_witness_random_trees():
    rng = random.Random(5)
    for _ in range(50):
        m = rng.randint(1, 64)
        tree = rand_cotree(rng, list(range(m)))
        G = AdjacencyGraph(m, list(cograph_edges(tree)))
        w = cograph_witness(tree)
        assert len(w.vertices) >= math.isqrt(m - 1) + 1 if m > 1 else True
        assert len(w.vertices) ** 2 >= m
        for i, u in enumerate(w.vertices):
            for v in w.vertices[i + 1:]:
                assert G.has_edge(u, v) == (w.kind == "clique")


# -- cograph extraction -----------------------------------------------------------

def qc_adjacency(Q):
    return AdjacencyGraph(Q.n, list(Q.edge_set()))


def test_find_cograph_plus_type_complete():
    Q = QuasiCompGraph(1, tuple(
        QuasiCompVertex((F(i),), (F(i) + 5,), i) for i in range(7)))
    tree = find_cograph(Q)
    assert isinstance(tree, JoinNode)
    assert sorted(cotree_leaves(tree)) == list(range(7))


def test_find_cograph_disjoint_intervals_form_clique():
    # type minus, intervals (y, x) pairwise disjoint: every pair adjacent
    Q = QuasiCompGraph(1, tuple(
        QuasiCompVertex((F(3 * i + 1),), (F(3 * i),), i) for i in range(6)))
    assert len(Q.edge_set()) == 15
    tree = find_cograph(Q)
    assert isinstance(tree, JoinNode)
    assert len(cotree_leaves(tree)) == 6


def test_find_cograph_nested_intervals_form_independent_set():
    # type minus, intervals nested around 0: pairwise intersecting, no edges
    Q = QuasiCompGraph(1, tuple(
        QuasiCompVertex((F(i + 1),), (F(-i - 1),), i) for i in range(6)))
    assert not Q.edge_set()
    tree = find_cograph(Q)
    assert isinstance(tree, UnionNode)
    assert len(cotree_leaves(tree)) == 6


def test_find_cograph_random_structurally_valid():
    rng = random.Random(71)
    sizes = []
    for _ in range(40):
        t = rng.randint(1, 2)
        n = rng.randint(1, 120)
        Q = rand_quasicomp(rng, t, n)
        tree = find_cograph(Q)
        G = qc_adjacency(Q)
        assert is_cograph_induced(G, tree) is None
        sizes.append((n, len(cotree_leaves(tree))))
    assert all(m >= 1 for _, m in sizes)


def test_find_cograph_growth_measured():
    # median leaf count grows with n; the tiny theoretical constants are not
    # asserted, only monotone growth of the measured medians
    rng = random.Random(77)
    medians = []
    for n in (20, 80, 200):
        counts = []
        for _ in range(9):
            Q = rand_quasicomp(rng, 2, n)
            counts.append(len(cotree_leaves(find_cograph(Q))))
        medians.append(sorted(counts)[len(counts) // 2])
    assert medians == sorted(medians)


# -- full witness recursion --------------------------------------------------------

def total_order_dnf(n):
    return DnfGraph(1, tuple((F(i),) for i in range(n)),
                    (form(x=[1], y=[-1]), form(x=[-1], y=[1])), ((0,), (1,)))


def test_ramsey_witness_complete_order():
    w = ramsey_witness(total_order_dnf(9))
    assert w.kind == "clique"
    assert len(w.vertices) >= 3


def test_ramsey_witness_two_levels():
    # first term never fires (constant 1 < 0 is false), second term always
    # does: the level recursion passes an independent set into the last term
    n = 8
    never = form(x=[0], y=[0], c=1)
    always = form(x=[0], y=[0], c=-1)
    D = DnfGraph(1, tuple((F(i),) for i in range(n)),
                 (never, always), ((0,), (1,)))
    w = ramsey_witness(D)
    assert w.kind == "clique" and len(w.vertices) == n


def test_ramsey_witness_empty_and_zero_term():
    D = DnfGraph(1, tuple((F(i),) for i in range(5)), (), ())
    w = ramsey_witness(D)
    assert w.kind == "is" and len(w.vertices) == 5
    assert ramsey_witness(DnfGraph(1, (), (), ())).vertices == ()


def test_ramsey_witness_random_consistent():
    rng = random.Random(83)
    for _ in range(40):
        D = rand_dnf(rng, t_max=2, n_max=60)
        w = ramsey_witness(D)
        A = materialize(D)
        for i, u in enumerate(w.vertices):
            for v in w.vertices[i + 1:]:
                assert A.has_edge(u, v) == (w.kind == "clique")
