"""Symmetric Ramsey witnesses via cographs.

A quasi-comparability graph in which every vertex has the same type contains
a polynomially large cograph; the extraction recursion below mirrors the
inductive argument step by step, and every structural claim the argument
makes (this cut is complete, that one is empty) is asserted against the
actual edges before being used.  A union/join tree then yields a clique or
independent set of at least square-root size by dynamic programming.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coloring import balanced_cut
from .core import DnfGraph, materialize
from .decompose import QuasiCompGraph, perturb, type_partition
from .errors import (InvalidCotree, PreconditionViolated,
                     ProofInvariantViolated)
from .exact import sum_tenth_roots_at_least_one

WITNESS_EXPONENT_DENOM = 10  # the constant c = 1/10 of the weight lemma


# ---------------------------------------------------------------------------
# Balanced weight functions on the Boolean lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightFunction:
    """Nonnegative weights on subsets of [t], subsets encoded as bitmasks."""

    t: int
    weights: dict[int, Fraction]

    def __post_init__(self):
        full = (1 << self.t) - 1
        for mask, w in self.weights.items():
            if not 0 <= mask <= full:
                raise ValueError(f"mask {mask} outside the lattice")
            if w < 0:
                raise ValueError("negative weight")

    def get(self, mask: int) -> Fraction:
        return self.weights.get(mask, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def family_weight(self, masks) -> Fraction:
        return sum((self.get(m) for m in masks), Fraction(0))

    def halfspace_without(self, i: int) -> Fraction:
        return sum((w for m, w in self.weights.items() if not m >> i & 1),
                   Fraction(0))

    def halfspace_with(self, i: int) -> Fraction:
        return sum((w for m, w in self.weights.items() if m >> i & 1),
                   Fraction(0))

    def is_balanced(self) -> bool:
        half = Fraction(1, 2)
        return all(self.halfspace_without(i) <= half and
                   self.halfspace_with(i) <= half for i in range(self.t))


@dataclass(frozen=True)
class CaseI:
    """Both extreme sets are heavy: join the two ends."""


@dataclass(frozen=True)
class CaseII:
    """Cross-incomparable families whose tenth-root weights sum to >= 1."""

    families: tuple[frozenset[int], ...]


EhOutcome = CaseI | CaseII


def _masks_incomparable(a: int, b: int) -> bool:
    return (a | b) != a and (a | b) != b


def _swap_bits(mask: int, i: int, j: int) -> int:
    if i == j:
        return mask
    bi, bj = mask >> i & 1, mask >> j & 1
    if bi == bj:
        return mask
    return mask ^ (1 << i) ^ (1 << j)


def caseI_threshold(t: int) -> Fraction:
    """Strengthened-induction bound 1/5 - sum_{i=3..t} (2/i)^10 (> 1/10)."""
    thr = Fraction(1, 5)
    for i in range(3, t + 1):
        thr -= Fraction(2, i) ** 10
    return thr


def _eh_rec(t: int, w: dict[int, Fraction]):
    full = (1 << t) - 1

    def get(m: int) -> Fraction:
        return w.get(m, Fraction(0))

    if t == 2:
        if get(0) >= Fraction(1, 5) and get(full) >= Fraction(1, 5):
            return CaseI()
        return CaseII((frozenset({0b01}), frozenset({0b10})))

    thr = Fraction(2, t) ** 10
    heavy_singles = [i for i in range(t) if get(1 << i) >= thr]
    if 2 * len(heavy_singles) >= t:
        take = (t + 1) // 2
        return CaseII(tuple(frozenset({1 << i}) for i in heavy_singles[:take]))
    heavy_cosingles = [i for i in range(t) if get(full ^ (1 << i)) >= thr]
    if 2 * len(heavy_cosingles) >= t:
        take = (t + 1) // 2
        return CaseII(tuple(frozenset({full ^ (1 << i)})
                            for i in heavy_cosingles[:take]))

    light = [i for i in range(t)
             if get(1 << i) < thr and get(full ^ (1 << i)) < thr]
    assert light, "pigeonhole: some index is light on both sides"
    pivot = light[0]

    swapped = {_swap_bits(m, pivot, t - 1): val for m, val in w.items()}
    top = 1 << (t - 1)
    contracted: dict[int, Fraction] = {}
    for m, val in swapped.items():
        key = m & ~top
        contracted[key] = contracted.get(key, Fraction(0)) + val
    sub = _eh_rec(t - 1, contracted)
    if isinstance(sub, CaseI):
        return CaseI()
    lifted = []
    for fam in sub.families:
        masks = set()
        for a in fam:
            masks.add(_swap_bits(a, pivot, t - 1))
            masks.add(_swap_bits(a | top, pivot, t - 1))
        lifted.append(frozenset(masks))
    return CaseII(tuple(lifted))


def validate_outcome(wf: WeightFunction, outcome: EhOutcome) -> None:
    """Assert the outcome's defining guarantees, exactly."""
    full = (1 << wf.t) - 1
    tenth = Fraction(1, 10)
    if isinstance(outcome, CaseI):
        if wf.get(0) < tenth or wf.get(full) < tenth:
            raise ProofInvariantViolated(
                "CaseI returned with a light extreme set",
                counterexample=(wf.get(0), wf.get(full)))
        return
    fams = outcome.families
    seen: set[int] = set()
    for fam in fams:
        if not fam:
            raise ProofInvariantViolated("empty family in CaseII")
        if seen & fam:
            raise ProofInvariantViolated("families are not disjoint")
        seen |= fam
    for i in range(len(fams)):
        for j in range(i + 1, len(fams)):
            for a in fams[i]:
                for b in fams[j]:
                    if not _masks_incomparable(a, b):
                        raise ProofInvariantViolated(
                            "comparable sets across families",
                            counterexample=(a, b))
    sums = [wf.family_weight(f) for f in fams]
    if not sum_tenth_roots_at_least_one(sums):
        raise ProofInvariantViolated(
            "tenth-root weights of the families sum below 1",
            counterexample=sums)


def eh_decompose(wf: WeightFunction) -> EhOutcome:
    """Constructive decomposition of a balanced weight function.

    Requires t >= 2, balance, and total weight >= 9/10.  Returns CaseI when
    the empty set and the full set both weigh at least 1/10 (via the
    strengthened induction), otherwise CaseII families that are pairwise
    incomparable across families with tenth-root weights summing to >= 1.
    """
    if wf.t < 2:
        raise PreconditionViolated("need t >= 2", witness=wf.t)
    if not wf.is_balanced():
        raise PreconditionViolated("weight function is not balanced")
    if wf.total() < Fraction(9, 10):
        raise PreconditionViolated("total weight below 9/10",
                                   witness=wf.total())
    outcome = _eh_rec(wf.t, dict(wf.weights))
    validate_outcome(wf, outcome)
    return outcome


# ---------------------------------------------------------------------------
# Cotrees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    vertex: int


@dataclass(frozen=True)
class UnionNode:
    children: tuple


@dataclass(frozen=True)
class JoinNode:
    children: tuple


Cotree = Leaf | UnionNode | JoinNode


def cotree_leaves(node: Cotree) -> list[int]:
    if isinstance(node, Leaf):
        return [node.vertex]
    out: list[int] = []
    for c in node.children:
        out.extend(cotree_leaves(c))
    return out


def _check_tree_shape(node: Cotree) -> None:
    if isinstance(node, Leaf):
        return
    if not isinstance(node, (UnionNode, JoinNode)):
        raise InvalidCotree(f"not a cotree node: {node!r}")
    if not node.children:
        raise InvalidCotree("internal node without children")
    for c in node.children:
        _check_tree_shape(c)


# ---------------------------------------------------------------------------
# Cograph extraction
# ---------------------------------------------------------------------------

def _edge_on(Q: QuasiCompGraph, u: int, v: int, active: Sequence[int]) -> bool:
    a, b = Q.vertices[u], Q.vertices[v]
    return (all(a.x[i] < b.y[i] for i in active) or
            all(b.x[i] < a.y[i] for i in active))


def _assert_complete(Q, left, right, active, context):
    for u in left:
        for v in right:
            if not _edge_on(Q, u, v, active):
                raise ProofInvariantViolated(
                    f"missing cross edge in {context}", counterexample=(u, v))


def _assert_empty(Q, left, right, active, context):
    for u in left:
        for v in right:
            if _edge_on(Q, u, v, active):
                raise ProofInvariantViolated(
                    f"unexpected cross edge in {context}", counterexample=(u, v))


def _max_disjoint_intervals(items):
    """Greedy max family of pairwise disjoint open intervals.

    items: (left, right, vertex).  Assumes no interval endpoint of one item
    equals an endpoint of another in a way that matters: callers run after
    perturbation, which kills every x-vs-y tie.
    """
    chosen = []
    last_end = None
    for left, right, v in sorted(items, key=lambda it: (it[1], it[0], it[2])):
        if last_end is None or last_end < left:
            chosen.append(v)
            last_end = right
    return chosen


def _max_stabbed_intervals(items):
    """A largest set of open intervals sharing a common point."""
    events = []
    for left, right, _ in items:
        events.append((left, 1))
        events.append((right, -1))
    values = sorted({v for v, _ in events})
    starts = sorted(v for v, k in events if k == 1)
    ends = sorted(v for v, k in events if k == -1)
    from bisect import bisect_right
    best_count, best_point = -1, None
    for a, b in zip(values, values[1:]):
        mid = (a + b) / 2
        count = bisect_right(starts, mid) - bisect_right(ends, mid)
        if count > best_count:
            best_count, best_point = count, mid
    if best_point is None:
        return [items[0][2]] if items else []
    return [v for left, right, v in items if left < best_point < right]


def _interval_base(Q: QuasiCompGraph, members, coord: int) -> Cotree:
    """t = 1, minus type: the class is the disjointness graph of (y, x).

    A pairwise-disjoint family is a clique (join), a pairwise-intersecting
    family an independent set (union); return the larger.
    """
    items = [(Q.vertices[v].y[coord], Q.vertices[v].x[coord], v)
             for v in members]
    disjoint = _max_disjoint_intervals(items)
    stabbed = _max_stabbed_intervals(items)
    if len(disjoint) >= len(stabbed):
        for i, u in enumerate(disjoint):
            for v in disjoint[i + 1:]:
                if not _edge_on(Q, u, v, [coord]):
                    raise ProofInvariantViolated(
                        "disjoint intervals not adjacent", (u, v))
        return JoinNode(tuple(Leaf(v) for v in disjoint))
    for i, u in enumerate(stabbed):
        for v in stabbed[i + 1:]:
            if _edge_on(Q, u, v, [coord]):
                raise ProofInvariantViolated(
                    "stabbed intervals adjacent", (u, v))
    return UnionNode(tuple(Leaf(v) for v in stabbed))


def _cograph_rec(Q: QuasiCompGraph, members: list[int],
                 active: list[int], sign: dict[int, int]) -> Cotree:
    n = len(members)
    if n == 1:
        return Leaf(members[0])
    t = len(active)
    if t == 1:
        i = active[0]
        if sign[i] > 0:
            _assert_complete(Q, members, members, active, "plus type, t=1")
            return JoinNode(tuple(Leaf(v) for v in members))
        return _interval_base(Q, members, i)

    # balanced cut values per coordinate
    zero_sets: dict[int, list[int]] = {}
    side_of: dict[int, dict[int, int]] = {}
    for i in active:
        intervals = [(min(Q.vertices[v].x[i], Q.vertices[v].y[i]),
                      max(Q.vertices[v].x[i], Q.vertices[v].y[i]))
                     for v in members]
        _, below, above, crossing = balanced_cut(intervals)
        zero_sets[i] = [members[p] for p in crossing]
        marks = {}
        for p in below:
            marks[members[p]] = 0
        for p in above:
            marks[members[p]] = 1
        side_of[i] = marks

    for i in active:
        if 10 * t * len(zero_sets[i]) >= n:
            middle = zero_sets[i]
            if sign[i] < 0:
                _assert_empty(Q, middle, middle, active, "minus middle slab")
                return UnionNode(tuple(Leaf(v) for v in middle))
            rest = [j for j in active if j != i]
            for a, u in enumerate(middle):
                for v in middle[a + 1:]:
                    if _edge_on(Q, u, v, active) != _edge_on(Q, u, v, rest):
                        raise ProofInvariantViolated(
                            "dropping a straddling plus coordinate changed "
                            "an edge", counterexample=(u, v))
            return _cograph_rec(Q, middle, rest, sign)

    # every middle slab is small: classify survivors by side pattern
    in_zero = set()
    for i in active:
        in_zero.update(zero_sets[i])
    classes: dict[int, list[int]] = {}
    for v in members:
        if v in in_zero:
            continue
        mask = 0
        for pos, i in enumerate(active):
            if side_of[i][v] == 1:
                mask |= 1 << pos
        classes.setdefault(mask, []).append(v)
    weights = {mask: Fraction(len(vs), n) for mask, vs in classes.items()}
    outcome = eh_decompose(WeightFunction(t, weights))

    full = (1 << t) - 1
    if isinstance(outcome, CaseI):
        lo, hi = classes[0], classes[full]
        _assert_complete(Q, lo, hi, active, "extreme side classes")
        return JoinNode((
            _cograph_rec(Q, lo, active, sign),
            _cograph_rec(Q, hi, active, sign),
        ))
    parts = []
    groups = []
    for fam in outcome.families:
        block: list[int] = []
        for mask in sorted(fam):
            block.extend(classes.get(mask, []))
        if block:
            groups.append(block)
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            _assert_empty(Q, groups[a], groups[b], active,
                          "incomparable family classes")
    for block in groups:
        parts.append(_cograph_rec(Q, block, active, sign))
    return UnionNode(tuple(parts))


def find_cograph(Q: QuasiCompGraph) -> Cotree:
    """Extract a large induced cograph as a union/join tree over Q's indices.

    Perturbs, keeps the largest same-type class (at least n / 2^t vertices),
    and runs the recursion; every union/join is checked against the real
    edges before it is built, so a returned tree is always structurally
    valid.
    """
    if Q.n == 0:
        raise ValueError("cannot extract a cograph from an empty graph")
    Qp = perturb(Q)
    classes = type_partition(Qp)
    best_sign = sorted(classes, key=lambda sg: (-len(classes[sg]), sg))[0]
    members = classes[best_sign]
    active = list(range(Qp.t))
    sign = {i: best_sign[i] for i in active}
    return _cograph_rec(Qp, members, active, sign)


# ---------------------------------------------------------------------------
# Witness extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamseyWitness:
    kind: str  # "clique" | "is"
    vertices: tuple[int, ...]


def cograph_witness(tree: Cotree) -> RamseyWitness:
    """Largest clique/independent set of the denoted cograph, by DP.

    On an m-leaf tree the product of the two optima is at least m, so the
    returned witness has at least ceil(sqrt(m)) vertices.
    """
    _check_tree_shape(tree)
    leaves = cotree_leaves(tree)
    if len(set(leaves)) != len(leaves):
        raise InvalidCotree("duplicate leaf")
    if not leaves:
        raise InvalidCotree("empty cotree")

    def dp(node) -> tuple[int, list[int], int, list[int]]:
        if isinstance(node, Leaf):
            return 1, [node.vertex], 1, [node.vertex]
        subs = [dp(c) for c in node.children]
        if isinstance(node, JoinNode):
            cl = [v for s in subs for v in s[1]]
            best = max(subs, key=lambda s: s[2])
            return sum(s[0] for s in subs), cl, best[2], list(best[3])
        best = max(subs, key=lambda s: s[0])
        ind = [v for s in subs for v in s[3]]
        return best[0], list(best[1]), sum(s[2] for s in subs), ind

    cq, cset, iq, iset = dp(tree)
    if cq >= iq:
        witness = RamseyWitness("clique", tuple(cset))
    else:
        witness = RamseyWitness("is", tuple(iset))
    m = len(leaves)
    assert len(witness.vertices) ** 2 >= m, "witness below square-root size"
    return witness


def _verify_witness(adj, witness: RamseyWitness) -> None:
    vs = witness.vertices
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            has = adj.has_edge(u, v)
            if witness.kind == "clique" and not has:
                raise ProofInvariantViolated(
                    "claimed clique misses an edge", counterexample=(u, v))
            if witness.kind == "is" and has:
                raise ProofInvariantViolated(
                    "claimed independent set contains an edge",
                    counterexample=(u, v))


def _term_fires_somewhere(D: DnfGraph, term_index: int,
                          ids: list[int]) -> bool:
    term = D.terms[term_index]
    forms = [D.forms[i] for i in term]
    for u in ids:
        xu = D.vertices[u]
        for w in ids:
            if u != w and all(f(xu, D.vertices[w]) < 0 for f in forms):
                return True
    return False


def _witness_single_term(D: DnfGraph, term_index: int,
                         ids: list[int]) -> RamseyWitness:
    from .decompose import to_quasicomp

    sub = DnfGraph(D.dim, tuple(D.vertices[i] for i in ids), D.forms,
                   (D.terms[term_index],))
    Q = to_quasicomp(sub)[0]
    tree = find_cograph(Q)
    local = cograph_witness(tree)
    return RamseyWitness(local.kind, tuple(ids[p] for p in local.vertices))


def ramsey_witness(D: DnfGraph, adjacency=None) -> RamseyWitness:
    """Clique-or-independent-set witness for a strict-DNF graph.

    Level recursion on the number of terms, run iteratively from the first
    term up: a clique found in the union of earlier terms survives adding a
    term, while an independent set there carries no earlier edges, so the
    next term restricted to it decides alone.  The final witness is verified
    against the materialized edge set (pass `adjacency` when the edges are
    already known; it must equal materialize(D)).
    """
    n = D.n
    if n == 0:
        return RamseyWitness("is", ())

    if not D.terms:
        witness = RamseyWitness("is", tuple(range(n)))
    else:
        witness = _witness_single_term(D, 0, list(range(n)))
        for j in range(1, len(D.terms)):
            if witness.kind == "clique":
                break
            ids = list(witness.vertices)
            if _term_fires_somewhere(D, j, ids):
                witness = _witness_single_term(D, j, ids)
            # a term with no edges inside an independent set leaves it intact
    _verify_witness(adjacency if adjacency is not None else materialize(D),
                    witness)
    return witness
