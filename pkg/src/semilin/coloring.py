"""Proper colorings with polylogarithmic palettes.

The pipeline: a strict-DNF graph decomposes into quasi-comparability graphs;
each of those splits by vertex type into unions of (box intersection graph)
cap (comparability graph); those are colored by a halving recursion whose
base case is a chain decomposition; unions are recombined by product
colorings and disjoint types by disjoint palettes.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .decompose import QuasiCompGraph, perturb, type_partition
from .errors import DomainMismatch, NotPartialOrder, PreconditionViolated

# Properness is re-checked by a full edge scan whenever the instance is at
# most this many vertices; larger instances rely on the per-step assertions
# and on the oracle suite.
FULL_SCAN_LIMIT = 600


# ---------------------------------------------------------------------------
# Boxes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Open axis-parallel box; d = 0 (no coordinates) is allowed and behaves
    as an everywhere-intersecting degenerate box."""

    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("lower/upper dimension mismatch")
        for lo, hi in zip(self.lower, self.upper):
            if not lo < hi:
                raise ValueError("open box needs lower < upper in every dim")

    @property
    def dim(self) -> int:
        return len(self.lower)

    def intersects(self, other: "Box") -> bool:
        return all(a < d and c < b
                   for a, b, c, d in zip(self.lower, self.upper,
                                         other.lower, other.upper))


def box(lower, upper) -> Box:
    return Box(tuple(Fraction(v) for v in lower),
               tuple(Fraction(v) for v in upper))


# ---------------------------------------------------------------------------
# Orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DominanceCondition:
    """One conjunct of a dominance order: v < w requires left[v] < right[w]."""

    left: dict[int, Fraction]
    right: dict[int, Fraction]


class OrderRelation:
    """Strict partial order over a fixed vertex-id set.

    Backed either by explicit dominance conditions (conjunctions of
    left-key(v) < right-key(w) tests, which admit an O(n log n) chain
    decomposition) or by an arbitrary predicate.
    """

    def __init__(self, verts: Sequence[int],
                 less: Callable[[int, int], bool],
                 conditions: list[DominanceCondition] | None = None):
        self.verts = tuple(verts)
        self._less = less
        self.conditions = conditions

    @classmethod
    def from_dominance(cls, verts: Sequence[int],
                       conditions: list[DominanceCondition]) -> "OrderRelation":
        def less(u: int, v: int) -> bool:
            return all(c.left[u] < c.right[v] for c in conditions)
        return cls(verts, less, conditions)

    @classmethod
    def from_pairs(cls, verts: Sequence[int],
                   pairs: set[tuple[int, int]]) -> "OrderRelation":
        ps = set(pairs)
        return cls(verts, lambda u, v: (u, v) in ps)

    @classmethod
    def from_predicate(cls, verts: Sequence[int],
                       fn: Callable[[int, int], bool]) -> "OrderRelation":
        return cls(verts, fn)

    @classmethod
    def index_order(cls, verts: Sequence[int]) -> "OrderRelation":
        """Total order by vertex id; comparability graph is complete."""
        key = {v: Fraction(v) for v in verts}
        return cls.from_dominance(verts, [DominanceCondition(key, key)])

    def less(self, u: int, v: int) -> bool:
        return self._less(u, v)

    def comparable(self, u: int, v: int) -> bool:
        return u != v and (self._less(u, v) or self._less(v, u))

    def restrict(self, verts: Sequence[int]) -> "OrderRelation":
        return OrderRelation(verts, self._less, self.conditions)


class _MaxFenwick:
    """Prefix-maximum tree over ranks, carrying (chain length, -vertex)."""

    def __init__(self, size: int):
        self.size = size
        self.data: list[tuple[int, int] | None] = [None] * (size + 1)

    def update(self, i: int, value: tuple[int, int]):
        i += 1
        while i <= self.size:
            if self.data[i] is None or value > self.data[i]:
                self.data[i] = value
            i += i & (-i)

    def query(self, upto: int) -> tuple[int, int] | None:
        """Max over ranks [0, upto)."""
        best = None
        i = upto
        while i > 0:
            if self.data[i] is not None and (best is None or self.data[i] > best):
                best = self.data[i]
            i -= i & (-i)
        return best


def _chains_dominance(order: OrderRelation) -> tuple[dict[int, int], dict[int, int | None]]:
    conds = order.conditions
    verts = order.verts
    # The sweep computes each vertex's value at its right key and inserts it
    # at its left key, so it needs right <= left per condition; orders built
    # from perturbed types always satisfy this, anything else goes generic.
    for c in conds:
        for v in verts:
            if c.left[v] < c.right[v]:
                return _chains_generic(order)
    if len(conds) > 2:
        return _chains_generic(order)

    F: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    c1 = conds[0]
    # events: (primary value, kind, vertex id); queries (kind 0) precede
    # inserts (kind 1) at equal value so strictness is respected, and a
    # vertex's own query never trails its insert because right <= left.
    events = sorted(
        [(c1.right[v], 0, v) for v in verts] + [(c1.left[v], 1, v) for v in verts]
    )
    if len(conds) == 1:
        best: tuple[int, int] | None = None
        for _, kind, v in events:
            if kind == 0:
                if best is None:
                    F[v], parent[v] = 1, None
                else:
                    F[v], parent[v] = best[0] + 1, -best[1]
            else:
                cand = (F[v], -v)
                if best is None or cand > best:
                    best = cand
        return F, parent

    c2 = conds[1]
    lefts2 = sorted({c2.left[v] for v in verts})
    fen = _MaxFenwick(len(lefts2))
    for _, kind, v in events:
        if kind == 0:
            upto = bisect_left(lefts2, c2.right[v])
            best = fen.query(upto)
            if best is None:
                F[v], parent[v] = 1, None
            else:
                F[v], parent[v] = best[0] + 1, -best[1]
        else:
            fen.update(bisect_left(lefts2, c2.left[v]), (F[v], -v))
    return F, parent


def _chains_generic(order: OrderRelation) -> tuple[dict[int, int], dict[int, int | None]]:
    verts = order.verts
    less = order.less
    succ: dict[int, list[int]] = {v: [] for v in verts}
    indeg = {v: 0 for v in verts}
    for u in verts:
        if less(u, u):
            raise NotPartialOrder(f"vertex {u} precedes itself")
        for v in verts:
            if u != v and less(u, v):
                if less(v, u):
                    raise NotPartialOrder(f"{u} and {v} precede each other")
                succ[u].append(v)
                indeg[v] += 1
    F: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    queue = [v for v in verts if indeg[v] == 0]
    done = 0
    while queue:
        u = queue.pop()
        if u not in F:
            F[u], parent[u] = 1, None
        done += 1
        for v in succ[u]:
            if v not in F or F[u] + 1 > F[v]:
                F[v], parent[v] = F[u] + 1, u
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if done != len(verts):
        raise NotPartialOrder("relation contains a cycle")
    return F, parent


def _chain_lengths(order: OrderRelation):
    if order.conditions:
        return _chains_dominance(order)
    return _chains_generic(order)


def longest_chain(order: OrderRelation) -> list[int]:
    """A maximum chain, bottom to top."""
    F, parent = _chain_lengths(order)
    if not F:
        return []
    top = max(order.verts, key=lambda v: (F[v], -v))
    chain = [top]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    chain.reverse()
    return chain


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------

@dataclass
class Coloring:
    colors: dict[int, int]
    palette: int

    def __post_init__(self):
        assert all(0 <= c < self.palette for c in self.colors.values()), \
            "color outside palette"


def mirsky_color(order: OrderRelation) -> Coloring:
    """Color each vertex by its longest ending chain length (0-based).

    The palette equals the longest chain length, which is the clique number
    of the comparability graph, so the coloring is optimal there.
    """
    F, _ = _chain_lengths(order)
    if not F:
        return Coloring({}, 1)
    palette = max(F.values())
    return Coloring({v: F[v] - 1 for v in order.verts}, palette)


def compact_colors(coloring: Coloring) -> Coloring:
    """Relabel to consecutive colors 0..k-1 (order preserving).

    Properness is preserved and the palette only shrinks; the big products
    over many union factors otherwise produce astronomically large palette
    integers whose colors are almost all unused.
    """
    used = sorted(set(coloring.colors.values()))
    rank = {c: i for i, c in enumerate(used)}
    return Coloring({v: rank[c] for v, c in coloring.colors.items()},
                    max(len(used), 1))


def product_color(colorings: Sequence[Coloring]) -> Coloring:
    """Mixed-radix combination; proper for the union of the input graphs."""
    if not colorings:
        raise ValueError("product over no colorings")
    if len(colorings) == 1:
        return colorings[0]
    keys = set(colorings[0].colors)
    for c in colorings[1:]:
        if set(c.colors) != keys:
            raise DomainMismatch("colorings cover different vertex sets")
    colors = {v: 0 for v in keys}
    radix = 1
    for c in colorings:
        for v in keys:
            colors[v] += c.colors[v] * radix
        radix *= max(c.palette, 1)
    return Coloring(colors, radix)


# ---------------------------------------------------------------------------
# Balanced hyperplane cuts
# ---------------------------------------------------------------------------

def balanced_cut(intervals: Sequence[tuple[Fraction, Fraction]]):
    """(h, below, above, crossing) with |below|, |above| <= n/2.

    below = indices with upper <= h, above = indices with lower >= h.  The
    sweep tries the endpoint values in ascending order first and falls back
    to midpoints of consecutive distinct endpoints (needed e.g. when all
    intervals coincide); a valid h always exists among those candidates.
    """
    n = len(intervals)
    lowers = sorted(lo for lo, _ in intervals)
    uppers = sorted(hi for _, hi in intervals)

    def counts(h: Fraction) -> tuple[int, int]:
        below = bisect_right(uppers, h)
        above = n - bisect_left(lowers, h)
        return below, above

    endpoints = sorted(set(lowers) | set(uppers))
    candidates = list(endpoints)
    candidates += [(a + b) / 2 for a, b in zip(endpoints, endpoints[1:])]
    for h in candidates:
        below, above = counts(h)
        if 2 * below <= n and 2 * above <= n:
            below_idx = [i for i, (_, hi) in enumerate(intervals) if hi <= h]
            above_idx = [i for i, (lo, _) in enumerate(intervals) if lo >= h]
            cut = set(below_idx) | set(above_idx)
            crossing = [i for i in range(n) if i not in cut]
            return h, below_idx, above_idx, crossing
    raise AssertionError("no balanced cut among endpoint/midpoint candidates")


def split_hyperplane(boxes: Sequence[Box], dim: int):
    """Balanced axis cut of a box family in one coordinate."""
    if not boxes:
        raise ValueError("split_hyperplane needs at least one box")
    return balanced_cut([(b.lower[dim], b.upper[dim]) for b in boxes])


# ---------------------------------------------------------------------------
# Box-intersection cap comparability coloring
# ---------------------------------------------------------------------------

def color_box_cap_comparability(boxes: Sequence[Box], order: OrderRelation,
                                s: int, stats: dict | None = None) -> Coloring:
    """Properly color (intersection graph of boxes) cap (comparability graph).

    order.verts[i] labels boxes[i].  Requires the capped graph to have no
    clique of size s; a chain of length >= s found in a base case (where the
    involved boxes pairwise intersect) is returned as the witness of a
    PreconditionViolated.

    Recursion: a balanced hyperplane cut lets the two outer parts share one
    palette (no capped edges cross the cut) while the crossing boxes recurse
    one dimension lower on a fresh palette; the fully projected base case is
    a pure chain decomposition with fewer than s colors.
    """
    n = len(boxes)
    if len(order.verts) != n:
        raise DomainMismatch("order must label exactly the given boxes")
    if stats is not None:
        stats.setdefault("max_depth", 0)
    ids = order.verts
    dims = boxes[0].dim if boxes else 0
    for b in boxes:
        if b.dim != dims:
            raise ValueError("boxes of mixed dimension")

    def base_chain(positions: list[int]) -> tuple[dict[int, int], int]:
        sub = order.restrict([ids[p] for p in positions])
        col = mirsky_color(sub)
        if col.palette >= s:
            chain = longest_chain(sub)
            raise PreconditionViolated(
                f"clique of size {len(chain)} >= s = {s} in a base case",
                witness=chain)
        return dict(col.colors), col.palette

    def rec(positions: list[int], d: int, depth: int) -> tuple[dict[int, int], int]:
        if stats is not None and depth > stats["max_depth"]:
            stats["max_depth"] = depth
        if not positions:
            return {}, 0
        if len(positions) == 1:
            return {ids[positions[0]]: 0}, 1
        if d == 0:
            return base_chain(positions)
        h, rel_below, rel_above, rel_cross = balanced_cut(
            [(boxes[p].lower[d - 1], boxes[p].upper[d - 1]) for p in positions])
        below = [positions[i] for i in rel_below]
        above = [positions[i] for i in rel_above]
        crossing = [positions[i] for i in rel_cross]
        cb, pb = rec(below, d, depth + 1)
        ca, pa = rec(above, d, depth + 1)
        # below and above boxes are separated by the hyperplane, so the two
        # recursive colorings can share a palette
        side_palette = max(pb, pa)
        colors = dict(cb)
        colors.update(ca)
        if d == 1:
            cc, pc = base_chain(crossing)
        else:
            cc, pc = rec(crossing, d - 1, depth + 1)
        for v, c in cc.items():
            colors[v] = side_palette + c
        return colors, side_palette + pc

    colors, palette = rec(list(range(n)), dims, 0)
    out = Coloring(colors, max(palette, 1))
    if n <= FULL_SCAN_LIMIT:
        pos_of = {v: i for i, v in enumerate(ids)}
        for i, u in enumerate(ids):
            for v in ids[i + 1:]:
                if boxes[pos_of[u]].intersects(boxes[pos_of[v]]) and \
                        order.comparable(u, v):
                    assert out.colors[u] != out.colors[v], \
                        f"improper on capped edge ({u}, {v})"
    return out


# ---------------------------------------------------------------------------
# Quasi-comparability coloring
# ---------------------------------------------------------------------------

def _plus_subset_instance(Q: QuasiCompGraph, members: list[int],
                          plus: list[int], rest: list[int], chosen: set[int]):
    """Boxes and order for one subset of the plus coordinates.

    Boxes live on the plus coordinates outside `chosen`; the order demands
    x(i) < y'(i) on minus coordinates and y(i) < x'(i) on chosen ones.
    """
    free = [i for i in plus if i not in chosen]
    boxes = [Box(tuple(Q.vertices[v].x[i] for i in free),
                 tuple(Q.vertices[v].y[i] for i in free)) for v in members]
    conditions = []
    for i in rest:
        conditions.append(DominanceCondition(
            {v: Q.vertices[v].x[i] for v in members},
            {v: Q.vertices[v].y[i] for v in members}))
    for i in sorted(chosen):
        conditions.append(DominanceCondition(
            {v: Q.vertices[v].y[i] for v in members},
            {v: Q.vertices[v].x[i] for v in members}))
    if conditions:
        order = OrderRelation.from_dominance(members, conditions)
    else:
        # all coordinates are plus and none chosen: the two defining bullet
        # lists are empty, every pair would be related; any total order has
        # the same (complete) comparability graph, so use vertex ids
        order = OrderRelation.index_order(members)
    return boxes, order


def color_quasicomp(Q: QuasiCompGraph, s: int, stats: dict | None = None) -> Coloring:
    """Color a quasi-comparability graph with no clique of size s.

    Perturbs, partitions by type, writes each type class as the union over
    subsets of its plus coordinates of a boxes-cap-comparability graph,
    colors those, and recombines: product palettes inside a class, disjoint
    palettes across classes.
    """
    if Q.n == 0:
        return Coloring({}, 1)
    Qp = perturb(Q)
    classes = type_partition(Qp)
    colors: dict[int, int] = {}
    offset = 0
    for sign in sorted(classes):
        members = classes[sign]
        plus = [i for i, sg in enumerate(sign) if sg > 0]
        rest = [i for i, sg in enumerate(sign) if sg < 0]
        per_subset = []
        for mask in range(1 << len(plus)):
            chosen = {plus[j] for j in range(len(plus)) if mask >> j & 1}
            boxes, order = _plus_subset_instance(Qp, members, plus, rest, chosen)
            per_subset.append(
                color_box_cap_comparability(boxes, order, s, stats))
        combined = compact_colors(product_color(per_subset))
        for v in members:
            colors[v] = offset + combined.colors[v]
        offset += combined.palette
    out = Coloring(colors, max(offset, 1))
    if Q.n <= FULL_SCAN_LIMIT:
        for u in range(Q.n):
            for v in range(u + 1, Q.n):
                if Qp.edge_value(u, v):
                    assert out.colors[u] != out.colors[v], \
                        f"improper on edge ({u}, {v})"
    return out


def color_semilinear(G, s: int, stats: dict | None = None) -> Coloring:
    """Full pipeline for a semilinear or strict-DNF graph without an s-clique."""
    from .core import DnfGraph, SemilinearGraph, to_dnf
    from .decompose import to_quasicomp

    if isinstance(G, SemilinearGraph):
        D = to_dnf(G)
    elif isinstance(G, DnfGraph):
        D = G
    else:
        raise TypeError("expected a SemilinearGraph or DnfGraph")
    if D.n == 0:
        return Coloring({}, 1)
    parts = [color_quasicomp(q, s, stats) for q in to_quasicomp(D)]
    if not parts:
        return Coloring({v: 0 for v in range(D.n)}, 1)
    return compact_colors(product_color(parts))
