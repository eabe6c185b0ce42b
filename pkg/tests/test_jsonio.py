import json
import random
from fractions import Fraction as F

from helpers import rand_cotree, rand_dnf, rand_incidence, rand_quasicomp, \
    rand_symmetric_semilinear

from semilin import jsonio
from semilin.coloring import Coloring
from semilin.core import materialize
from semilin.exact import format_rational, parse_rational
from semilin.ramsey import RamseyWitness


def test_rational_strings():
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(-6, 3)) == "-2"
    assert parse_rational("7/2") == F(7, 2)
    assert parse_rational("-5") == F(-5)


def roundtrip(obj):
    return json.loads(jsonio.dumps(obj))


def test_semilinear_roundtrip():
    rng = random.Random(1)
    for _ in range(10):
        G = rand_symmetric_semilinear(rng, n_max=8)
        back = jsonio.graph_from_obj(roundtrip(jsonio.semilinear_to_obj(G)))
        assert back == G
        assert materialize(back) == materialize(G)


def test_dnf_roundtrip():
    rng = random.Random(2)
    for _ in range(10):
        D = rand_dnf(rng, n_max=8)
        back = jsonio.graph_from_obj(roundtrip(jsonio.dnf_to_obj(D)))
        assert back == D


def test_adjacency_quasicomp_incidence_roundtrip():
    rng = random.Random(3)
    D = rand_dnf(rng, n_max=8)
    A = materialize(D)
    assert jsonio.graph_from_obj(roundtrip(jsonio.adjacency_to_obj(A))) == A
    Q = rand_quasicomp(rng, 2, 6)
    assert jsonio.graph_from_obj(roundtrip(jsonio.quasicomp_to_obj(Q))) == Q
    G = rand_incidence(rng, 4, 3)
    back = jsonio.graph_from_obj(roundtrip(jsonio.incidence_to_obj(G)))
    assert back.points == G.points and back.rects == G.rects


def test_coloring_witness_cotree_roundtrip():
    c = Coloring({0: 2, 1: 0, 2: 1}, 3)
    back = jsonio.coloring_from_obj(roundtrip(jsonio.coloring_to_obj(c)))
    assert back.colors == c.colors and back.palette == 3
    w = RamseyWitness("clique", (4, 1, 2))
    bw = jsonio.witness_from_obj(roundtrip(jsonio.witness_to_obj(w)))
    assert bw.kind == "clique" and set(bw.vertices) == {1, 2, 4}
    rng = random.Random(4)
    tree = rand_cotree(rng, list(range(9)))
    assert jsonio.cotree_from_obj(roundtrip(jsonio.cotree_to_obj(tree))) == tree


def test_dumps_is_canonical():
    a = jsonio.dumps({"b": 1, "a": [2, 3]})
    b = jsonio.dumps({"a": [2, 3], "b": 1})
    assert a == b
    assert a.endswith("\n")
