"""Shared randomized instance generators and naive reference computations."""

from fractions import Fraction
from itertools import combinations

from semilin.coloring import Box
from semilin.construct import IncidenceGraph, OrderedBipartiteGraph
from semilin.core import (And, Atom, DnfGraph, LinearForm, Not, Or,
                          SemilinearGraph)
from semilin.decompose import QuasiCompGraph, QuasiCompVertex
from semilin.ramsey import JoinNode, Leaf, UnionNode


def frac(rng, lo=-6, hi=6, den=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_form(rng, d: int) -> LinearForm:
    return LinearForm(tuple(frac(rng, -3, 3, 4) for _ in range(d)),
                      tuple(frac(rng, -3, 3, 4) for _ in range(d)),
                      frac(rng, -3, 3, 4))


def rand_formula(rng, n_forms: int, depth: int = 2):
    if depth == 0 or rng.random() < 0.35:
        return Atom(rng.randrange(n_forms), rng.choice(["lt", "le", "eq"]))
    roll = rng.random()
    if roll < 0.2:
        return Not(rand_formula(rng, n_forms, depth - 1))
    children = tuple(rand_formula(rng, n_forms, depth - 1)
                     for _ in range(rng.randint(2, 3)))
    return And(children) if roll < 0.6 else Or(children)


def _shift_atoms(node, offset: int):
    if isinstance(node, Atom):
        return Atom(node.form + offset, node.rel)
    if isinstance(node, Not):
        return Not(_shift_atoms(node.child, offset))
    kids = tuple(_shift_atoms(c, offset) for c in node.children)
    return And(kids) if isinstance(node, And) else Or(kids)


def rand_symmetric_semilinear(rng, d_max=3, half_t_max=2, n_max=30
                              ) -> SemilinearGraph:
    """Random graph with a formula of the shape F(x,y) op F(y,x).

    Uses at most 2 * half_t_max forms, so complexity stays <= 4 by default.
    """
    d = rng.randint(1, d_max)
    base_t = rng.randint(1, half_t_max)
    forms = [rand_form(rng, d) for _ in range(base_t)]
    body = rand_formula(rng, base_t)
    mirror = _shift_atoms(body, base_t)
    op = Or if rng.random() < 0.5 else And
    n = rng.randint(1, n_max)
    verts = tuple(tuple(frac(rng) for _ in range(d)) for _ in range(n))
    return SemilinearGraph(d, verts,
                           tuple(forms) + tuple(f.swapped() for f in forms),
                           op((body, mirror)))


def rand_dnf(rng, t_max=3, n_max=20, d_max=2, mirrored=True) -> DnfGraph:
    """Random strict-DNF graph, symmetric because every term has its mirror."""
    d = rng.randint(1, d_max)
    t = rng.randint(1, t_max)
    forms = [rand_form(rng, d) for _ in range(t)]
    forms += [f.swapped() for f in forms]
    term = tuple(range(t))
    mirror = tuple(range(t, 2 * t))
    terms = (term, mirror) if mirrored else (term + mirror,)
    n = rng.randint(1, n_max)
    verts = tuple(tuple(frac(rng) for _ in range(d)) for _ in range(n))
    return DnfGraph(d, verts, tuple(forms), terms)


def rand_quasicomp(rng, t: int, n: int, span=8) -> QuasiCompGraph:
    verts = []
    for i in range(n):
        xs = tuple(frac(rng, -span, span, 4) for _ in range(t))
        ys = tuple(frac(rng, -span, span, 4) for _ in range(t))
        verts.append(QuasiCompVertex(xs, ys, i))
    return QuasiCompGraph(t, tuple(verts))


def rand_poset_pairs(rng, n: int, p=0.4) -> set[tuple[int, int]]:
    """Transitively closed random subrelation of a random linear order."""
    order = list(range(n))
    rng.shuffle(order)
    reach = [0] * n  # successor bitmask per vertex
    for i in reversed(range(n)):
        u = order[i]
        mask = 0
        for j in range(i + 1, n):
            if rng.random() < p:
                v = order[j]
                mask |= (1 << v) | reach[v]
        reach[u] = mask
    return {(u, v) for u in range(n) for v in range(n) if reach[u] >> v & 1}


def rand_boxes(rng, d: int, n: int, span=10) -> list[Box]:
    out = []
    for _ in range(n):
        lo, hi = [], []
        for _ in range(d):
            a = frac(rng, -span, span, 3)
            w = abs(frac(rng, 1, span, 3)) + Fraction(1, 7)
            lo.append(a)
            hi.append(a + w)
        out.append(Box(tuple(lo), tuple(hi)))
    return out


def rand_cotree(rng, leaves: list[int]):
    if len(leaves) == 1:
        return Leaf(leaves[0])
    k = rng.randint(2, min(3, len(leaves)))
    rng.shuffle(leaves)
    cuts = sorted(rng.sample(range(1, len(leaves)), k - 1))
    parts = []
    prev = 0
    for c in cuts + [len(leaves)]:
        parts.append(leaves[prev:c])
        prev = c
    kids = tuple(rand_cotree(rng, part) for part in parts)
    return JoinNode(kids) if rng.random() < 0.5 else UnionNode(kids)


def cograph_edges(tree) -> set[tuple[int, int]]:
    """Edge set of the cograph a union/join tree denotes."""
    if isinstance(tree, Leaf):
        return set()
    out = set()
    leafsets = []
    for c in tree.children:
        out |= cograph_edges(c)
        leafsets.append(sorted_leaves(c))
    if isinstance(tree, JoinNode):
        for i in range(len(leafsets)):
            for j in range(i + 1, len(leafsets)):
                for u in leafsets[i]:
                    for v in leafsets[j]:
                        out.add((min(u, v), max(u, v)))
    return out


def sorted_leaves(tree) -> list[int]:
    if isinstance(tree, Leaf):
        return [tree.vertex]
    return [v for c in tree.children for v in sorted_leaves(c)]


def rand_incidence(rng, n_points: int, n_rects: int, span=12) -> IncidenceGraph:
    """Random points and rectangles with no point/boundary contact.

    Point coordinates are sevenths with numerators coprime to 7 while the
    rectangle corners use denominators up to 3, so they can never coincide.
    """
    def coord():
        a = rng.randint(1, 7 * span)
        if a % 7 == 0:
            a += 1
        return Fraction(a, 7)

    points = []
    seen = set()
    while len(points) < n_points:
        p = (coord(), coord())
        if p not in seen:
            seen.add(p)
            points.append(p)
    rects = rand_boxes(rng, 2, n_rects, span)
    return IncidenceGraph(points, rects)


def rand_ordered_bipartite(rng, n_a: int, n_b: int, p=0.4
                           ) -> OrderedBipartiteGraph:
    edges = tuple((a, b) for a in range(n_a) for b in range(n_b)
                  if rng.random() < p)
    oa, ob = list(range(n_a)), list(range(n_b))
    rng.shuffle(oa)
    rng.shuffle(ob)
    return OrderedBipartiteGraph(n_a, n_b, edges, tuple(oa), tuple(ob))


# -- naive references ---------------------------------------------------------

def brute_epsilon(G) -> Fraction:
    vals = []
    for u in range(G.n):
        for v in range(G.n):
            if u == v:
                continue
            for f in G.forms:
                vals.append(f(G.vertices[u], G.vertices[v]))
    nonzero = [abs(x) for x in vals if x != 0]
    return min(nonzero) / 2 if nonzero else Fraction(1)


def shift_edges_by_rule(m: int, k: int) -> set[tuple[int, int]]:
    verts = list(combinations(range(1, m + 1), k))
    idx = {v: i for i, v in enumerate(verts)}
    out = set()
    for a in verts:
        for b in verts:
            if a != b and all(a[i + 1] == b[i] for i in range(k - 1)):
                out.add((min(idx[a], idx[b]), max(idx[a], idx[b])))
    return out
