"""Lower-bound constructions and named test families.

Point/open-rectangle incidence graphs are the ground truth here: an
IncidenceGraph stores only geometry, and its edge set is always recomputed
from strict containment, so "stored edges equal geometric recomputation"
holds by construction.  On top of that sit the level-tensoring operation
with its geometric realization, a seeded randomized sparsifier that removes
short cycles, the degree step-up iteration, super-line graphs with their
constant-size sign-pattern encoding, a lifting of incidences to 3D box
intersections, and the shift / restricted-intersection generator families.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coloring import Box
from .core import (EQ, LE, LT, AdjacencyGraph, And, Atom, LinearForm, Not, Or,
                   SemilinearGraph, form, materialize)
from .errors import (DegenerateInput, DomainMismatch, InvalidParams,
                     PreconditionViolated, ProofInvariantViolated,
                     SamplingFailed, TooLarge)
from .exact import ceil_log2, iroot

Point = tuple[Fraction, Fraction]

RAND_DENOM_BITS = 53  # random rationals have denominator 2**53


# ---------------------------------------------------------------------------
# Incidence graphs
# ---------------------------------------------------------------------------

class IncidenceGraph:
    """Points and open axis-parallel rectangles; edges derived from geometry.

    The point list is the A side, the rectangle list the B side.
    """

    __slots__ = ("points", "rects", "_inc")

    def __init__(self, points: Sequence[Point], rects: Sequence[Box]):
        self.points: tuple[Point, ...] = tuple(
            (Fraction(x), Fraction(y)) for x, y in points)
        for r in rects:
            if r.dim != 2:
                raise ValueError("incidence rectangles are 2-dimensional")
        self.rects: tuple[Box, ...] = tuple(rects)
        self._inc = None

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_rects(self) -> int:
        return len(self.rects)

    def incidences(self) -> frozenset[tuple[int, int]]:
        if self._inc is None:
            inc = set()
            for pi, (px, py) in enumerate(self.points):
                for ri, r in enumerate(self.rects):
                    if r.lower[0] < px < r.upper[0] and \
                            r.lower[1] < py < r.upper[1]:
                        inc.add((pi, ri))
            self._inc = frozenset(inc)
        return self._inc

    def edge_count(self) -> int:
        return len(self.incidences())

    def point_degree(self, pi: int) -> int:
        return sum(1 for a, _ in self.incidences() if a == pi)

    def rect_degree(self, ri: int) -> int:
        return sum(1 for _, b in self.incidences() if b == ri)

    def bipartite_adjacency(self) -> AdjacencyGraph:
        """Points get ids 0..P-1, rectangles P..P+R-1."""
        off = self.n_points
        return AdjacencyGraph(off + self.n_rects,
                              [(a, off + b) for a, b in self.incidences()])

    def __repr__(self):
        return (f"IncidenceGraph(points={self.n_points}, "
                f"rects={self.n_rects}, edges={self.edge_count()})")


def base_star(m: int) -> IncidenceGraph:
    """One rectangle containing m points on a horizontal line.

    Realizes the tuple (m, 1, m, 1, g) for every g.
    """
    if m < 1:
        raise InvalidParams("base_star needs m >= 1")
    half = Fraction(1, 2)
    points = [(Fraction(i), half) for i in range(1, m + 1)]
    rect = Box((Fraction(0), Fraction(0)), (Fraction(m + 1), Fraction(1)))
    return IncidenceGraph(points, [rect])


# ---------------------------------------------------------------------------
# Level tensoring
# ---------------------------------------------------------------------------

def _normalize_into_band(G: IncidenceGraph) -> IncidenceGraph:
    """Affine map of all geometry into (0, 1) x (0, 1/2), incidences intact."""
    xs = [p[0] for p in G.points] + \
        [r.lower[0] for r in G.rects] + [r.upper[0] for r in G.rects]
    ys = [p[1] for p in G.points] + \
        [r.lower[1] for r in G.rects] + [r.upper[1] for r in G.rects]

    def mapper(vals, squeeze: Fraction):
        lo, hi = min(vals), max(vals)
        span = hi - lo
        margin = span / 4 if span > 0 else Fraction(1)
        scale = squeeze / (span + 2 * margin)
        return lambda v: (v - lo + margin) * scale

    fx = mapper(xs, Fraction(1))
    fy = mapper(ys, Fraction(1, 2))
    points = [(fx(px), fy(py)) for px, py in G.points]
    rects = [Box((fx(r.lower[0]), fy(r.lower[1])),
                 (fx(r.upper[0]), fy(r.upper[1]))) for r in G.rects]
    out = IncidenceGraph(points, rects)
    assert out.incidences() == G.incidences(), "normalization moved an edge"
    return out


def _tilt_points(G: IncidenceGraph) -> IncidenceGraph:
    """Give every point a distinct x coordinate by a tiny index-scaled shift.

    The shift is under half the smallest positive gap among all x values
    (points, rectangle sides, and the band walls 0 and 1), so no strict
    x comparison flips; a point exactly on a rectangle's vertical side would
    make the incidence assert fail loudly.
    """
    n = G.n_points
    if n <= 1:
        return G
    values = sorted({p[0] for p in G.points} |
                    {r.lower[0] for r in G.rects} |
                    {r.upper[0] for r in G.rects} |
                    {Fraction(0), Fraction(1)})
    gaps = [b - a for a, b in zip(values, values[1:])]
    gmin = min(gaps) if gaps else Fraction(1)
    eta = gmin / (2 * n)
    points = [(px + i * eta, py) for i, (px, py) in enumerate(G.points)]
    out = IncidenceGraph(points, G.rects)
    if len({p[0] for p in out.points}) != n:
        raise DegenerateInput("tilt failed to separate x coordinates")
    if out.incidences() != G.incidences():
        raise DegenerateInput("tilt changed incidences (boundary contact?)")
    return out


def abstract_tensor_edges(n_a: int, n_b: int, edges, k: int) -> set[tuple[int, int]]:
    """Edge set of the k-level tensor under the canonical labeling.

    A-side vertex (u, level) has index u*k + level; B-side copies (v, level)
    come first with index v*k + level, then one collector per original
    A-vertex at index n_b*k + u.  Levels run 0..k-1 here.
    """
    out = set()
    for u, v in edges:
        for lev in range(k):
            out.add((u * k + lev, v * k + lev))
    for u in range(n_a):
        for lev in range(k):
            out.add((u * k + lev, n_b * k + u))
    return out


def tensor_k(G: IncidenceGraph, k: int, verify: bool = True) -> IncidenceGraph:
    """k stacked copies plus one thin collector rectangle per source point.

    Copy `lev` is the normalized, tilted geometry shifted up by lev + 1; the
    collector for point u is a thin vertical rectangle spanning heights
    (1/2, k + 1/2) that contains exactly u's k copies.  The realized
    incidences equal the abstract tensor definition (asserted), so the edge
    count is |E|*k + |A|*k.
    """
    if k < 1:
        raise InvalidParams("tensor_k needs k >= 1")
    G0 = _tilt_points(_normalize_into_band(G))
    n, m = G0.n_points, G0.n_rects
    points: list[Point] = []
    for u, (px, py) in enumerate(G0.points):
        for lev in range(k):
            points.append((px, py + lev + 1))
    rects: list[Box] = []
    for r in G0.rects:
        for lev in range(k):
            shift = Fraction(lev + 1)
            rects.append(Box((r.lower[0], r.lower[1] + shift),
                             (r.upper[0], r.upper[1] + shift)))
    xs = sorted(p[0] for p in G0.points)
    half = Fraction(1, 2)
    for u, (px, _) in enumerate(G0.points):
        if n > 1:
            dist = min(abs(px - x) for x in xs if x != px)
        else:
            dist = Fraction(1, 2)
        w = dist / 4
        rects.append(Box((px - w, half), (px + w, Fraction(k) + half)))
    out = IncidenceGraph(points, rects)
    if verify:
        want = abstract_tensor_edges(n, m, G0.incidences(), k)
        if set(out.incidences()) != want:
            raise ProofInvariantViolated(
                "tensor realization disagrees with its definition")
    return out


def tensor_H_k(G: IncidenceGraph, H, k: int) -> IncidenceGraph:
    """Induced subgraph of tensor_k keeping A-side copies selected by H.

    H is a set of (point index, level) pairs with levels 1..k.  The
    realization is the tensor geometry minus the dropped points; the result
    is asserted to equal the induced abstract subgraph.
    """
    n = G.n_points
    for u, lev in H:
        if not (0 <= u < n and 1 <= lev <= k):
            raise DomainMismatch(
                f"selector pair ({u}, {lev}) outside A x [1..{k}]")
    T = tensor_k(G, k, verify=False)
    kept_global = sorted(u * k + (lev - 1) for u, lev in H)
    points = [T.points[i] for i in kept_global]
    out = IncidenceGraph(points, T.rects)
    pos = {g: i for i, g in enumerate(kept_global)}
    want = {(pos[a], b)
            for a, b in abstract_tensor_edges(n, G.n_rects, G.incidences(), k)
            if a in pos}
    if set(out.incidences()) != want:
        raise ProofInvariantViolated(
            "sparsified tensor realization disagrees with its definition")
    return out


# ---------------------------------------------------------------------------
# Randomized selector with girth control
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantSchedule:
    """Tunable constants of the sparsifier.

    Defaults are the source values; the relaxed preset makes desk-scale runs
    feasible while the structural guarantees stay oracle-checked.
    """

    threshold_factor: Fraction = Fraction(100)
    log_base: int = 2
    degree_slack: Fraction = Fraction(2)
    edge_floor: Fraction = Fraction(1, 2)
    max_resamples: int = 16

    def __post_init__(self):
        if self.threshold_factor <= 0 or self.degree_slack <= 0 or \
                self.edge_floor <= 0 or self.max_resamples < 1:
            raise ValueError("schedule constants must be positive")
        if self.log_base != 2:
            raise ValueError("the logarithm base is fixed to 2")


PAPER_SCHEDULE = ConstantSchedule()
RELAXED_SCHEDULE = ConstantSchedule(threshold_factor=Fraction(1, 4),
                                    edge_floor=Fraction(1, 4),
                                    max_resamples=32)


def threshold_value(k: int, g: int, sched: ConstantSchedule) -> Fraction:
    """(factor * ceil(log2 k)) ** (2 g^2); the integer log keeps this exact."""
    base = sched.threshold_factor * ceil_log2(max(k, 1))
    return base ** (2 * g * g)


def selection_probability(n_a: int, n_b: int, k: int, g: int) -> Fraction:
    """(2/k) * (|A|/|B|)^(1/2g), rounded down to denominator 2**53, capped at 1."""
    scale = 1 << RAND_DENOM_BITS
    r = iroot((n_a * scale ** (2 * g)) // n_b, 2 * g)
    p = Fraction(2 * r, k * scale)
    return min(p, Fraction(1))


def _neighbors_by_rect(G: IncidenceGraph) -> list[list[int]]:
    nbrs: list[list[int]] = [[] for _ in range(G.n_rects)]
    for a, b in sorted(G.incidences()):
        nbrs[b].append(a)
    return nbrs


def _find_short_cycle(adj: dict, bound: int):
    """A cycle of length < bound in an undirected graph, or None."""
    for root in sorted(adj):
        dist = {root: 0}
        parent = {root: None}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in sorted(adj[u]):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif parent[u] != v and dist[u] + dist[v] + 1 < bound:
                        up, vp = u, v
                        left, right = [up], [vp]
                        while dist[up] > dist[vp]:
                            up = parent[up]
                            left.append(up)
                        while dist[vp] > dist[up]:
                            vp = parent[vp]
                            right.append(vp)
                        while up != vp:
                            up, vp = parent[up], parent[vp]
                            left.append(up)
                            right.append(vp)
                        right.pop()
                        return left + right[::-1]
            frontier = nxt
    return None


def _strip_short_common_cycles(H: set, rect_nbrs, k: int, g: int) -> set:
    """Delete one selector edge per short cycle living over a common rectangle,
    until none remain.  Deletions only remove cycles, so this terminates."""
    if g < 3:
        return H
    H = set(H)
    changed = True
    while changed:
        changed = False
        for nbrs in rect_nbrs:
            present = [u for u in nbrs]
            adj: dict = {}
            for u in present:
                for lev in range(1, k + 1):
                    if (u, lev) in H:
                        adj.setdefault(("a", u), set()).add(("l", lev))
                        adj.setdefault(("l", lev), set()).add(("a", u))
            cycle = _find_short_cycle(adj, 2 * g)
            if cycle:
                x, y = cycle[0], cycle[1]
                (u, lev) = (x[1], y[1]) if x[0] == "a" else (y[1], x[1])
                H.discard((u, lev))
                changed = True
    return H


def sample_H(G: IncidenceGraph, k: int, g: int, sched: ConstantSchedule,
             seed) -> tuple[frozenset, dict]:
    """Seeded selector construction with degree trimming and cycle removal.

    Each (point, level) pair joins independently with probability p compared
    exactly against a random rational of denominator 2**53; selector edges
    touching an overloaded copy/collector vertex are dropped, then one edge
    of every short cycle over a common rectangle; the sample is accepted when
    at least edge_floor * p * k * |A| edges survive, else resampled.
    """
    n_a, n_b = G.n_points, G.n_rects
    if n_a == 0 or n_b == 0:
        raise PreconditionViolated("selector needs nonempty sides")
    rect_nbrs = _neighbors_by_rect(G)
    if any(len(nb) > k for nb in rect_nbrs):
        raise PreconditionViolated("a rectangle exceeds the degree cap k")
    thr = threshold_value(k, g, sched)
    if thr * n_b > n_a:
        raise PreconditionViolated(
            f"threshold fails: {thr} * {n_b} > {n_a}", witness=thr)
    if n_a > k * n_b:
        raise PreconditionViolated("|A| > k |B|")

    p = selection_probability(n_a, n_b, k, g)
    cap = sched.degree_slack * p * k
    floor = sched.edge_floor * p * k * n_a
    scale = 1 << RAND_DENOM_BITS
    attempts_log = []

    for attempt in range(sched.max_resamples):
        rng = random.Random(f"semilin:{seed}:{attempt}")
        H0 = set()
        for u in range(n_a):
            for lev in range(1, k + 1):
                if Fraction(rng.getrandbits(RAND_DENOM_BITS), scale) < p:
                    H0.add((u, lev))
        # copy-vertex degrees in the sparsified tensor
        copy_deg = {}
        for b, nbrs in enumerate(rect_nbrs):
            for lev in range(1, k + 1):
                d = sum(1 for u in nbrs if (u, lev) in H0)
                if d:
                    copy_deg[(b, lev)] = d
        collector_deg = {}
        for u, lev in H0:
            collector_deg[u] = collector_deg.get(u, 0) + 1
        bad_copies = {key for key, d in copy_deg.items() if d > cap}
        bad_collectors = {u for u, d in collector_deg.items() if d > cap}
        point_rects: list[list[int]] = [[] for _ in range(n_a)]
        for a, b in G.incidences():
            point_rects[a].append(b)
        H1 = set()
        for u, lev in H0:
            if u in bad_collectors:
                continue
            if any((b, lev) in bad_copies for b in point_rects[u]):
                continue
            H1.add((u, lev))
        H2 = _strip_short_common_cycles(H1, rect_nbrs, k, g)
        attempts_log.append(len(H2))
        if Fraction(len(H2)) >= floor:
            for b, nbrs in enumerate(rect_nbrs):
                for lev in range(1, k + 1):
                    assert sum(1 for u in nbrs if (u, lev) in H2) <= cap
            for u in range(n_a):
                assert sum(1 for lev in range(1, k + 1)
                           if (u, lev) in H2) <= cap
            info = {"p": p, "attempt": attempt, "edges": len(H2),
                    "floor": floor, "cap": cap}
            return frozenset(H2), info
    raise SamplingFailed(
        f"no sample reached the edge floor {floor} in "
        f"{sched.max_resamples} attempts",
        stats={"p": p, "floor": floor, "achieved": attempts_log})


# ---------------------------------------------------------------------------
# Realizable tuples and the step-up iteration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealizableTuple:
    a: int
    b: int
    k: int
    d: int
    g: int

    def __post_init__(self):
        if min(self.a, self.b, self.k, self.d, self.g) < 1:
            raise ValueError("tuple entries must be positive")
        if self.d >= 1 and self.a > self.b * self.k:
            raise ValueError("realizable tuples with d >= 1 satisfy a <= b*k")


def check_realizes(G: IncidenceGraph, tup: RealizableTuple) -> None:
    """Raise unless G witnesses the tuple (counts, degrees, girth)."""
    from .oracle import girth

    if G.n_points != tup.a or G.n_rects != tup.b:
        raise ProofInvariantViolated(
            f"size mismatch: ({G.n_points}, {G.n_rects}) vs "
            f"({tup.a}, {tup.b})")
    inc = G.incidences()
    pdeg = [0] * G.n_points
    rdeg = [0] * G.n_rects
    for a, b in inc:
        pdeg[a] += 1
        rdeg[b] += 1
    if any(d != tup.d for d in pdeg):
        raise ProofInvariantViolated("a point degree differs from d")
    if any(d > tup.k for d in rdeg):
        raise ProofInvariantViolated("a rectangle degree exceeds k")
    if girth(G.bipartite_adjacency()) < 2 * tup.g:
        raise ProofInvariantViolated("girth below 2g")


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def step_up(tup: RealizableTuple, G: IncidenceGraph, sched: ConstantSchedule,
            seed) -> tuple[RealizableTuple, IncidenceGraph, dict]:
    """One sparsified tensor step: degrees rise by one, girth is preserved.

    Returns the new tuple (achieved A size, 2kb padded B side, trimmed degree
    cap, d+1, g), the realizing graph, and sampling info.
    """
    check_realizes(G, tup)
    H, info = sample_H(G, tup.k, tup.g, sched, seed)
    G2 = tensor_H_k(G, H, tup.k)
    b_new = 2 * tup.k * tup.b
    missing = b_new - G2.n_rects
    if missing < 0:
        raise ProofInvariantViolated("tensor produced more than 2kb rectangles")
    rects = list(G2.rects)
    for j in range(missing):
        x0 = Fraction(2 + j)
        rects.append(Box((x0, Fraction(0)), (x0 + Fraction(1, 2), Fraction(1))))
    G3 = IncidenceGraph(G2.points, rects)
    k_new = max(1, _ceil_frac(sched.degree_slack * info["p"] * tup.k))
    new_tup = RealizableTuple(a=G3.n_points, b=b_new, k=k_new,
                              d=tup.d + 1, g=tup.g)
    check_realizes(G3, new_tup)
    return new_tup, G3, info


def build_girth_construction(m: int, g: int, sched: ConstantSchedule,
                             seed, max_steps: int | None = None
                             ) -> tuple[IncidenceGraph, dict]:
    """Iterate step_up from the star while the threshold allows it.

    Stops on the threshold, a degenerate tuple, or max_steps (a desk-scale
    guard: relaxed schedules keep the threshold satisfiable while the B side
    grows geometrically).  The surviving larger side is trimmed so both
    sides have n vertices; with an A-side trim every point keeps degree
    steps + 1 and the edge count is exactly (steps + 1) * n.
    """
    if m < 2:
        raise InvalidParams("need m >= 2")
    tup = RealizableTuple(m, 1, m, 1, g)
    G = base_star(m)
    trace = [tup]
    steps = 0
    stop_reason = None
    while True:
        if max_steps is not None and steps >= max_steps:
            stop_reason = "max_steps"
            break
        if tup.a < 2 or tup.k < 2:
            stop_reason = "degenerate"
            break
        if threshold_value(tup.k, g, sched) * tup.b > tup.a:
            stop_reason = "threshold"
            break
        try:
            tup, G, _ = step_up(tup, G, sched, f"{seed}:{steps}")
        except SamplingFailed as err:
            err.trace = [t for t in trace]
            raise
        trace.append(tup)
        steps += 1

    n = min(G.n_points, G.n_rects)
    trimmed_side = "none"
    points, rects = list(G.points), list(G.rects)
    if len(points) > n:
        points = points[:n]
        trimmed_side = "a"
    elif len(rects) > n:
        empty = {ri for ri in range(len(rects))
                 if all(b != ri for _, b in G.incidences())}
        keep = [r for ri, r in enumerate(rects) if ri not in empty]
        keep += [rects[ri] for ri in sorted(empty)]
        rects = keep[:n]
        trimmed_side = "b"
    out = IncidenceGraph(points, rects)

    from .oracle import girth as girth_oracle
    gi = girth_oracle(out.bipartite_adjacency())
    stats = {
        "m": m,
        "g": g,
        "steps": steps,
        "a_degree": tup.d,
        "n": n,
        "edges": out.edge_count(),
        "girth": gi,
        "stop_reason": stop_reason,
        "trimmed_side": trimmed_side,
        "tuples": [(t.a, t.b, t.k, t.d, t.g) for t in trace],
    }
    if gi < 2 * g:
        raise ProofInvariantViolated(f"output girth {gi} below {2 * g}")
    return out, stats


def bcstt_construction(k: int, cap: int = 20000) -> IncidenceGraph:
    """The k-fold iterated tensor of a k-point star.

    Dense (edges per point grow by one each round) and free of complete
    2x2 bipartite subgraphs when the star is.
    """
    if k < 2:
        raise InvalidParams("need k >= 2")
    G = base_star(k)
    for _ in range(k):
        next_points = G.n_points * k
        next_rects = G.n_rects * k + G.n_points
        if next_points + next_rects > cap:
            raise TooLarge(
                f"iterated tensor would reach {next_points + next_rects} "
                f"vertices (cap {cap})")
        G = tensor_k(G, k)
    return G


# ---------------------------------------------------------------------------
# Super-line graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedBipartiteGraph:
    n_a: int
    n_b: int
    edges: tuple[tuple[int, int], ...]
    order_a: tuple[int, ...]  # vertices listed in ascending order
    order_b: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order_a) != list(range(self.n_a)) or \
                sorted(self.order_b) != list(range(self.n_b)):
            raise ValueError("orders must be permutations of the classes")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")
        for a, b in self.edges:
            if not (0 <= a < self.n_a and 0 <= b < self.n_b):
                raise IndexError("edge endpoint out of range")

    def rank_a(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order_a)}

    def rank_b(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order_b)}


def superline_vertices(G: OrderedBipartiteGraph) -> list[tuple[int, int]]:
    ra, rb = G.rank_a(), G.rank_b()
    return sorted(G.edges, key=lambda e: (ra[e[0]], rb[e[1]]))


def superline(G: OrderedBipartiteGraph) -> AdjacencyGraph:
    """Graph on the edges of G: (u,v) ~ (u',v') when u <_A u', v <_B v' and
    {u, v'} is also an edge."""
    verts = superline_vertices(G)
    ra, rb = G.rank_a(), G.rank_b()
    eset = set(G.edges)
    out = []
    for i, (u, v) in enumerate(verts):
        for j in range(i + 1, len(verts)):
            u2, v2 = verts[j]
            if ra[u] == ra[u2] or rb[v] == rb[v2]:
                continue
            if ra[u] < ra[u2]:
                lo, hi = (u, v), (u2, v2)
            else:
                lo, hi = (u2, v2), (u, v)
            if rb[lo[1]] < rb[hi[1]] and (lo[0], hi[1]) in eset:
                out.append((i, j))
    return AdjacencyGraph(len(verts), out)


def incidence_to_ordered_bipartite(G: IncidenceGraph,
                                   order_a: Sequence[int] | None = None,
                                   order_b: Sequence[int] | None = None
                                   ) -> OrderedBipartiteGraph:
    oa = tuple(order_a) if order_a is not None else tuple(range(G.n_points))
    ob = tuple(order_b) if order_b is not None else tuple(range(G.n_rects))
    return OrderedBipartiteGraph(G.n_points, G.n_rects,
                                 tuple(sorted(G.incidences())), oa, ob)


def superline_semilinear(G: IncidenceGraph,
                         order_a: Sequence[int] | None = None,
                         order_b: Sequence[int] | None = None
                         ) -> SemilinearGraph:
    """Sign-pattern encoding of the super-line graph of an incidence graph.

    One vertex per incidence, with coordinates (x, y, a, b, c, d, i, j):
    point, rectangle corners, and the two order ranks.  Ten linear forms
    suffice: the rank forms serve both directions (one strict, one negated
    non-strict), the four containment forms appear once per direction.
    """
    obg = incidence_to_ordered_bipartite(G, order_a, order_b)
    ra, rb = obg.rank_a(), obg.rank_b()
    verts = []
    for p, r in superline_vertices(obg):
        px, py = G.points[p]
        rect = G.rects[r]
        verts.append((px, py, rect.lower[0], rect.lower[1],
                      rect.upper[0], rect.upper[1],
                      Fraction(ra[p] + 1), Fraction(rb[r] + 1)))
    d = 8

    def lf(xi: int | None, yi: int | None) -> LinearForm:
        xc = [Fraction(0)] * d
        yc = [Fraction(0)] * d
        if xi is not None:
            xc[xi] = Fraction(1)
        if yi is not None:
            yc[yi] = Fraction(-1)
        return LinearForm(tuple(xc), tuple(yc))

    def lf_rev(yi: int, xi: int) -> LinearForm:
        xc = [Fraction(0)] * d
        yc = [Fraction(0)] * d
        yc[yi] = Fraction(1)
        xc[xi] = Fraction(-1)
        return LinearForm(tuple(xc), tuple(yc))

    forms = (
        lf(6, 6),        # 0: i - i'
        lf(7, 7),        # 1: j - j'
        lf_rev(2, 0),    # 2: a' - x
        lf_rev(3, 1),    # 3: b' - y
        lf(0, 4),        # 4: x - c'
        lf(1, 5),        # 5: y - d'
        lf(2, 0),        # 6: a - x'   (mirror of 2)
        lf(3, 1),        # 7: b - y'
        lf_rev(0, 4),    # 8: x' - c
        lf_rev(1, 5),    # 9: y' - d
    )
    first = And(tuple([Atom(0, LT), Atom(1, LT)] +
                      [Atom(i, LT) for i in (2, 3, 4, 5)]))
    second = And(tuple([Not(Atom(0, LE)), Not(Atom(1, LE))] +
                       [Atom(i, LT) for i in (6, 7, 8, 9)]))
    return SemilinearGraph(d, tuple(verts), forms, Or((first, second)))


# ---------------------------------------------------------------------------
# 3D box lifting
# ---------------------------------------------------------------------------

def _linf_point_dist(p: Point, q: Point) -> Fraction:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _linf_rect_separation(p: Point, r: Box) -> Fraction:
    dx = max(r.lower[0] - p[0], p[0] - r.upper[0], Fraction(0))
    dy = max(r.lower[1] - p[1], p[1] - r.upper[1], Fraction(0))
    return max(dx, dy)


def _containment_margin(p: Point, r: Box) -> Fraction:
    return min(p[0] - r.lower[0], r.upper[0] - p[0],
               p[1] - r.lower[1], r.upper[1] - p[1])


def boxes3d_from_incidence(G: IncidenceGraph) -> list[Box]:
    """Open 3D boxes whose intersection graph is the incidence graph.

    Point j becomes a small square prism spanning the full unit height;
    rectangle j becomes the rectangle times a thin private height slab.
    Points on a rectangle boundary cannot be realized (any box around the
    point meets the open rectangle) and raise DegenerateInput.
    """
    pts, rects = G.points, G.rects
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise DegenerateInput(f"coincident points {i} and {j}")
    inc = G.incidences()
    constraints: list[Fraction] = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            constraints.append(_linf_point_dist(pts[i], pts[j]))
    for pi, p in enumerate(pts):
        for ri, r in enumerate(rects):
            if (pi, ri) in inc:
                constraints.append(_containment_margin(p, r))
            else:
                sep = _linf_rect_separation(p, r)
                if sep == 0:
                    raise DegenerateInput(
                        f"point {pi} touches the boundary of rectangle {ri}")
                constraints.append(sep)
    delta = min(constraints) / 2 if constraints else Fraction(1)
    half = delta / 2

    out: list[Box] = []
    for px, py in pts:
        out.append(Box((px - half, py - half, Fraction(0)),
                       (px + half, py + half, Fraction(1))))
    m = len(rects)
    eps = Fraction(1, 4 * (m + 1)) if m else Fraction(1)
    for j, r in enumerate(rects, start=1):
        xc = Fraction(j, m + 1)
        out.append(Box((r.lower[0], r.lower[1], xc - eps),
                       (r.upper[0], r.upper[1], xc + eps)))

    np = len(pts)
    for i in range(np):
        for j in range(i + 1, np):
            if out[i].intersects(out[j]):
                raise ProofInvariantViolated(
                    "point boxes intersect", counterexample=(i, j))
    for i in range(m):
        for j in range(i + 1, m):
            if out[np + i].intersects(out[np + j]):
                raise ProofInvariantViolated(
                    "rectangle boxes intersect", counterexample=(i, j))
    for pi in range(np):
        for ri in range(m):
            if out[pi].intersects(out[np + ri]) != ((pi, ri) in inc):
                raise ProofInvariantViolated(
                    "3D intersection disagrees with incidence",
                    counterexample=(pi, ri))
    return out


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

def shift_graph(m: int, k: int) -> SemilinearGraph:
    """Increasing k-tuples from [m]; adjacent when one is the left shift of
    the other.  Encoded with k-1 equality atoms per shift direction."""
    if k < 2 or m < k:
        raise InvalidParams("need m >= k >= 2")
    from itertools import combinations

    verts = tuple(tuple(Fraction(c) for c in comb)
                  for comb in combinations(range(1, m + 1), k))
    forms = []
    for i in range(k - 1):
        forms.append(form(x=[0] * (i + 1) + [1] + [0] * (k - i - 2),
                          y=[0] * i + [-1] + [0] * (k - i - 1)))
    for i in range(k - 1):
        forms.append(form(x=[0] * i + [-1] + [0] * (k - i - 1),
                          y=[0] * (i + 1) + [1] + [0] * (k - i - 2)))
    fwd = And(tuple(Atom(i, EQ) for i in range(k - 1)))
    bwd = And(tuple(Atom(k - 1 + i, EQ) for i in range(k - 1)))
    return SemilinearGraph(k, verts, tuple(forms), Or((fwd, bwd)))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _xor_tree(atoms: list):
    if len(atoms) == 1:
        return atoms[0]
    mid = len(atoms) // 2
    left = _xor_tree(atoms[:mid])
    right = _xor_tree(atoms[mid:])
    return Or((And((left, Not(right))), And((Not(left), right))))


def _count_mod_formula(atoms: list, p: int, residue: int):
    """Formula for "number of true atoms == residue (mod p)" as a shared DAG."""
    true_node = And(())
    false_node = Or(())
    state = [true_node] + [false_node] * (p - 1)
    for b in atoms:
        state = [Or((And((b, state[(s - 1) % p])), And((Not(b), state[s]))))
                 for s in range(p)]
    return state[residue % p]


def fw_set_edges(p: int, m: int) -> set[tuple[int, int]]:
    """Set-arithmetic reference: subsets adjacent when the intersection size
    is p-1 mod p."""
    from itertools import combinations

    subsets = list(combinations(range(1, m + 1), p * p - 1))
    out = set()
    for i in range(len(subsets)):
        for j in range(i + 1, len(subsets)):
            inter = len(set(subsets[i]) & set(subsets[j]))
            if inter % p == (p - 1) % p:
                out.add((i, j))
    return out


def frankl_wilson(p: int, m: int) -> SemilinearGraph:
    """Restricted-intersection family: (p^2-1)-subsets of [m] as sorted
    coordinate vectors, adjacent when the intersection size is -1 mod p.

    The encoding counts the zeros among the (p^2-1)^2 coordinate-difference
    forms; the resulting edge set is asserted equal to plain set arithmetic.
    """
    if not _is_prime(p):
        raise InvalidParams(f"{p} is not prime")
    r = p * p - 1
    if m < r:
        raise InvalidParams(f"need m >= {r}")
    from itertools import combinations

    verts = tuple(tuple(Fraction(c) for c in comb)
                  for comb in combinations(range(1, m + 1), r))
    forms = []
    for i in range(r):
        for j in range(r):
            xc = [Fraction(0)] * r
            yc = [Fraction(0)] * r
            xc[i] = Fraction(1)
            yc[j] = Fraction(-1)
            forms.append(LinearForm(tuple(xc), tuple(yc)))
    atoms = [Atom(idx, EQ) for idx in range(r * r)]
    if p == 2:
        formula = _xor_tree(atoms)
    else:
        formula = _count_mod_formula(atoms, p, p - 1)
    G = SemilinearGraph(r, verts, tuple(forms), formula)
    want = fw_set_edges(p, m)
    got = set(materialize(G).edges)
    if got != want:
        raise ProofInvariantViolated(
            "zero-pattern encoding disagrees with set arithmetic",
            counterexample=sorted(want ^ got)[:3])
    return G
