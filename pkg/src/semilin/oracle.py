"""Exact brute-force references.

Every guarantee the library makes is checkable at desk scale by one of these
oracles.  They are definitionally exact and refuse inputs above their budget
instead of degrading; the heavier ones (chromatic number, clique number)
carry an independent naive twin used to cross-check the oracle itself.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from .core import AdjacencyGraph
from .errors import OverBudget

INF = float("inf")


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int
    max_edges: int = 1_000_000
    timeout_seconds: float = 120.0

    def admit(self, G: AdjacencyGraph, what: str) -> None:
        if G.n > self.max_vertices or len(G.edges) > self.max_edges:
            raise OverBudget(
                f"{what}: n={G.n}, m={len(G.edges)} exceeds budget "
                f"({self.max_vertices} vertices / {self.max_edges} edges)")


CHROMATIC_BUDGET = OracleBudget(max_vertices=16)
CLIQUE_BUDGET = OracleBudget(max_vertices=40)


class _Deadline:
    def __init__(self, seconds: float, what: str):
        self.t_end = time.monotonic() + seconds
        self.what = what
        self.ticks = 0

    def check(self):
        self.ticks += 1
        if self.ticks % 4096 == 0 and time.monotonic() > self.t_end:
            raise OverBudget(f"{self.what}: timeout")


def _adj_masks(G: AdjacencyGraph) -> list[int]:
    masks = [0] * G.n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


# ---------------------------------------------------------------------------
# Chromatic number
# ---------------------------------------------------------------------------

def _greedy_clique(masks: list[int], order: list[int]) -> list[int]:
    clique: list[int] = []
    allowed = (1 << len(masks)) - 1
    for v in order:
        if allowed >> v & 1:
            clique.append(v)
            allowed &= masks[v]
    return clique


def _dsatur_upper(masks: list[int]) -> int:
    n = len(masks)
    colors = [-1] * n
    used = 0
    for _ in range(n):
        best, best_sat, best_deg = -1, -1, -1
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[u] for u in range(n)
                       if masks[v] >> u & 1 and colors[u] >= 0})
            deg = bin(masks[v]).count("1")
            if (sat, deg) > (best_sat, best_deg):
                best, best_sat, best_deg = v, sat, deg
        taken = {colors[u] for u in range(n) if masks[best] >> u & 1}
        c = 0
        while c in taken:
            c += 1
        colors[best] = c
        used = max(used, c + 1)
    return used


def _k_colorable(masks: list[int], k: int, deadline: _Deadline) -> bool:
    """Backtracking with propagation, postponement, and component splitting.

    allowed[v] is the bitmask of colors still open at v.  Three exact
    reductions run to a fixpoint before every branching step: a vertex with
    no open color fails the branch, one with a single open color is assigned
    immediately, and one with more open colors than uncolored neighbors is
    postponed (it can always be colored last, in reverse postponement
    order).  The surviving vertices split into connected components that are
    decided independently.  Branching picks a most-constrained vertex and
    never opens more than one brand-new color.
    """
    n = len(masks)
    full = (1 << k) - 1
    allowed = [full] * n
    colors = [-1] * n
    trail: list = []  # global undo trail; entries (v, -1) = uncolor, (v, c) = re-allow

    def assign(v: int, c: int) -> bool:
        colors[v] = c
        trail.append((v, -1))
        ok = True
        rest = masks[v]
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if colors[u] < 0 and allowed[u] >> c & 1:
                allowed[u] ^= 1 << c
                trail.append((u, c))
                if allowed[u] == 0:
                    ok = False
        return ok

    def unwind(mark: int):
        while len(trail) > mark:
            v, c = trail.pop()
            if c < 0:
                colors[v] = -1
            else:
                allowed[v] |= 1 << c

    def components(active: int) -> list[int]:
        comps = []
        rest = active
        while rest:
            comp = rest & -rest
            frontier = comp
            while frontier:
                grown = comp
                bits = frontier
                while bits:
                    v = (bits & -bits).bit_length() - 1
                    bits &= bits - 1
                    grown |= masks[v] & active
                frontier = grown & ~comp
                comp = grown
            comps.append(comp)
            rest &= ~comp
        return comps

    def rec(active: int, maxc: int) -> bool:
        deadline.check()
        mark = len(trail)
        while True:
            progress = False
            bits = active
            while bits:
                v = (bits & -bits).bit_length() - 1
                bits &= bits - 1
                av = allowed[v]
                if av == 0:
                    unwind(mark)
                    return False
                if av & (av - 1) == 0:
                    assign(v, av.bit_length() - 1)
                    active &= ~(1 << v)
                    maxc = max(maxc, av.bit_length() - 1)
                    progress = True
                elif bin(av).count("1") > bin(masks[v] & active).count("1"):
                    active &= ~(1 << v)  # greedy-safe: postpone
                    progress = True
            if not progress:
                break
        if active == 0:
            return True
        comps = components(active)
        if len(comps) > 1:
            for comp in comps:
                if not rec(comp, maxc):
                    unwind(mark)
                    return False
            return True
        best, key = -1, None
        bits = active
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            opts = bin(allowed[v]).count("1")
            deg = bin(masks[v] & active).count("1")
            if key is None or (opts, -deg) < key:
                best, key = v, (opts, -deg)
        cap = (1 << min(k, maxc + 2)) - 1  # at most one brand-new color
        choices = allowed[best] & cap
        while choices:
            c = (choices & -choices).bit_length() - 1
            choices &= choices - 1
            mark2 = len(trail)
            if assign(best, c) and rec(active & ~(1 << best), max(maxc, c)):
                return True
            unwind(mark2)
        unwind(mark)
        return False

    return rec((1 << n) - 1, -1)


def _k_core_masks(masks: list[int], k: int) -> list[int]:
    """Vertices of the k-core: peel degree < k repeatedly.

    Peeled vertices always extend a k-coloring of the core greedily, so
    k-colorability of the core decides the whole graph.
    """
    n = len(masks)
    alive = (1 << n) - 1
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if alive >> v & 1 and bin(masks[v] & alive).count("1") < k:
                alive ^= 1 << v
                changed = True
    return [v for v in range(n) if alive >> v & 1]


def exact_chromatic(G: AdjacencyGraph,
                    budget: OracleBudget = CHROMATIC_BUDGET) -> int:
    """Exact chromatic number by branch and bound over color classes."""
    budget.admit(G, "exact_chromatic")
    if G.n == 0:
        return 0
    masks = _adj_masks(G)
    if not G.edges:
        return 1
    deadline = _Deadline(budget.timeout_seconds, "exact_chromatic")
    order = sorted(range(G.n), key=lambda v: -bin(masks[v]).count("1"))
    lb = max(2, len(_greedy_clique(masks, order)))
    ub = _dsatur_upper(masks)
    for k in range(lb, ub):
        core = _k_core_masks(masks, k)
        if len(core) <= k:
            return k
        sub = G.induced(core)
        if _k_colorable(_adj_masks(sub), k, deadline):
            return k
    return ub


def chromatic_exhaustive(G: AdjacencyGraph, limit: int = 8) -> int:
    """Naive twin: try every assignment with k colors, k ascending."""
    if G.n > limit:
        raise OverBudget("chromatic_exhaustive is for tiny graphs only")
    if G.n == 0:
        return 0
    for k in range(1, G.n + 1):
        for assign in product(range(k), repeat=G.n):
            if all(assign[u] != assign[v] for u, v in G.edges):
                return k
    return G.n


# ---------------------------------------------------------------------------
# Cliques and independent sets
# ---------------------------------------------------------------------------

def max_clique(G: AdjacencyGraph,
               budget: OracleBudget = CLIQUE_BUDGET) -> list[int]:
    """A maximum clique, by branch and bound with a coloring bound."""
    budget.admit(G, "max_clique")
    if G.n == 0:
        return []
    masks = _adj_masks(G)
    deadline = _Deadline(budget.timeout_seconds, "max_clique")
    best: list[int] = []

    def color_sort(cand: int) -> list[tuple[int, int]]:
        # greedy color classes give an upper bound per candidate
        out = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                out.append((v, color))
                avail &= ~masks[v]
                rest &= ~(1 << v)
                avail &= rest
        return out

    def expand(cand: int, current: list[int]):
        nonlocal best
        deadline.check()
        ordered = color_sort(cand)
        for v, bound in reversed(ordered):
            if len(current) + bound <= len(best):
                return
            current.append(v)
            nxt = cand & masks[v]
            if nxt:
                expand(nxt, current)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            cand &= ~(1 << v)

    expand((1 << G.n) - 1, [])
    return sorted(best)


def max_independent_set(G: AdjacencyGraph,
                        budget: OracleBudget = CLIQUE_BUDGET) -> list[int]:
    budget.admit(G, "max_independent_set")
    return max_clique(G.complement(), OracleBudget(
        budget.max_vertices, 10 ** 9, budget.timeout_seconds))


def clique_exhaustive(G: AdjacencyGraph, limit: int = 16) -> list[int]:
    """Naive twin: scan all subsets, largest clique wins."""
    if G.n > limit:
        raise OverBudget("clique_exhaustive is for tiny graphs only")
    best: tuple[int, ...] = ()
    for size in range(G.n, 0, -1):
        for sub in combinations(range(G.n), size):
            if all(G.has_edge(u, v) for u, v in combinations(sub, 2)):
                return list(sub)
    return list(best)


# ---------------------------------------------------------------------------
# Girth
# ---------------------------------------------------------------------------

def girth(G: AdjacencyGraph) -> int | float:
    """Length of the shortest cycle; inf for forests.  BFS from each vertex."""
    adj = G.adj()
    best = INF
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                if 2 * dist[u] >= best:
                    break
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif parent[u] != v:
                        best = min(best, dist[u] + dist[v] + 1)
            frontier = nxt
    return best


def girth_via_edge_removal(G: AdjacencyGraph) -> int | float:
    """Naive twin: shortest cycle through each edge by path search."""
    adj = G.adj()
    best = INF
    for u, v in G.edges:
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for a in frontier:
                for b in adj[a]:
                    if (a, b) in ((u, v), (v, u)):
                        continue
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            frontier = nxt
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


# ---------------------------------------------------------------------------
# Bipartite checks
# ---------------------------------------------------------------------------

def has_K22(n_a: int, n_b: int, edges) -> tuple[int, int, int, int] | None:
    """Witness (a1, a2, b1, b2) of a complete 2x2 bipartite minor, else None."""
    nbrs = [set() for _ in range(n_a)]
    for a, b in edges:
        if not (0 <= a < n_a and 0 <= b < n_b):
            raise IndexError("bipartite edge endpoint out of range")
        nbrs[a].add(b)
    for a1 in range(n_a):
        for a2 in range(a1 + 1, n_a):
            common = sorted(nbrs[a1] & nbrs[a2])
            if len(common) >= 2:
                return (a1, a2, common[0], common[1])
    return None


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------

def is_cograph_induced(G: AdjacencyGraph, tree):
    """None if the union/join tree is valid against G's edges, else a
    counterexample (node kind, u, v)."""
    from .ramsey import JoinNode, Leaf, UnionNode

    def rec(node) -> list[int] | tuple:
        if isinstance(node, Leaf):
            return [node.vertex]
        parts = []
        for c in node.children:
            r = rec(c)
            if isinstance(r, tuple):
                return r
            parts.append(r)
        want_edge = isinstance(node, JoinNode)
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                for u in parts[i]:
                    for v in parts[j]:
                        if G.has_edge(u, v) != want_edge:
                            kind = "join" if want_edge else "union"
                            return (kind, u, v)
        return [v for p in parts for v in p]

    r = rec(tree)
    return None if isinstance(r, list) else r


def find_p4(G: AdjacencyGraph, verts: Sequence[int],
            limit: int = 40) -> tuple | None:
    """An induced 4-vertex path among verts, or None.  Quadruple scan."""
    if len(verts) > limit:
        raise OverBudget(f"P4 scan limited to {limit} vertices")
    for quad in combinations(verts, 4):
        deg = {v: 0 for v in quad}
        m = 0
        for u, v in combinations(quad, 2):
            if G.has_edge(u, v):
                deg[u] += 1
                deg[v] += 1
                m += 1
        if m == 3 and sorted(deg.values()) == [1, 1, 2, 2]:
            return quad
    return None


def is_proper(G: AdjacencyGraph, coloring) -> tuple[int, int] | None:
    """None when no edge is monochromatic, else a violating edge."""
    colors = coloring.colors
    for u, v in G.edges:
        if colors[u] == colors[v]:
            return (u, v)
    return None


def incidence_check(points, rects, claimed_edges) -> dict | None:
    """Recompute strict-interior incidences; None when they match the claim."""
    actual = set()
    for pi, (px, py) in enumerate(points):
        for ri, r in enumerate(rects):
            if r.lower[0] < px < r.upper[0] and r.lower[1] < py < r.upper[1]:
                actual.add((pi, ri))
    claimed = set(claimed_edges)
    if claimed == actual:
        return None
    return {"missing": sorted(actual - claimed),
            "extra": sorted(claimed - actual)}
