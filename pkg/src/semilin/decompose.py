"""From strict-DNF graphs to quasi-comparability graphs.

A quasi-comparability graph of complexity t has vertices that are pairs
(x, y) in R^t x R^t, with an edge exactly when x < y' or x' < y holds
coordinatewise-strictly.  Every term of a strict DNF turns into one such
graph: the term's forms split as f(x, y) = g(x) + h(y), each source vertex v
maps to (g(v), -h(v)), and the union of the per-term edge sets recovers the
source edge set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import DnfGraph, LinearForm, Vector
from .errors import NotPerturbed


@dataclass(frozen=True)
class PointForm:
    """Affine functional on a single point: c + sum_i coeffs[i]*p[i]."""

    coeffs: Vector
    c: Fraction = Fraction(0)

    def __call__(self, p: Sequence[Fraction]) -> Fraction:
        return self.c + sum(a * x for a, x in zip(self.coeffs, p))


def split_linear(f: LinearForm) -> tuple[PointForm, PointForm]:
    """Split f(x, y) into g(x) + h(y); the constant goes to the x side."""
    return PointForm(f.x_coeffs, f.c), PointForm(f.y_coeffs, Fraction(0))


@dataclass(frozen=True)
class QuasiCompVertex:
    x: Vector
    y: Vector
    original_index: int


def _dominates(a: Vector, b: Vector) -> bool:
    """a < b strictly in every coordinate."""
    return all(ai < bi for ai, bi in zip(a, b))


@dataclass(frozen=True)
class QuasiCompGraph:
    t: int
    vertices: tuple[QuasiCompVertex, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_value(self, u: int, v: int) -> bool:
        a, b = self.vertices[u], self.vertices[v]
        return _dominates(a.x, b.y) or _dominates(b.x, a.y)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.edge_value(u, v)}

    def restrict(self, keep: Sequence[int]) -> "QuasiCompGraph":
        return QuasiCompGraph(self.t, tuple(self.vertices[i] for i in keep))


def to_quasicomp(D: DnfGraph) -> list[QuasiCompGraph]:
    """One quasi-comparability graph per DNF term, on the full vertex set.

    Term i holds on the ordered pair (u, w) iff x-image(u) < y-image(w)
    coordinatewise, so the union of the returned edge sets (on original
    indices) is exactly the source edge set.
    """
    out = []
    for term in D.terms:
        splits = [split_linear(D.forms[i]) for i in term]
        verts = []
        for idx, coords in enumerate(D.vertices):
            xs = tuple(g(coords) for g, _ in splits)
            ys = tuple(-h(coords) for _, h in splits)
            verts.append(QuasiCompVertex(xs, ys, idx))
        out.append(QuasiCompGraph(len(term), tuple(verts)))
    return out


def perturbation_margin(Q: QuasiCompGraph) -> Fraction:
    """Half the smallest positive y-coordinate-over-x-coordinate gap.

    The minimum runs over all ordered vertex pairs (v, w) including v = w
    and all coordinates, of w.y[i] - v.x[i] restricted to positive values;
    1 when no gap is positive.
    """
    best: Fraction | None = None
    for i in range(Q.t):
        xs = sorted(v.x[i] for v in Q.vertices)
        for w in Q.vertices:
            y = w.y[i]
            # largest x strictly below y gives the smallest positive gap
            lo, hi = 0, len(xs)
            while lo < hi:
                mid = (lo + hi) // 2
                if xs[mid] < y:
                    lo = mid + 1
                else:
                    hi = mid
            if lo > 0:
                gap = y - xs[lo - 1]
                if best is None or gap < best:
                    best = gap
    if best is None:
        return Fraction(1)
    return best / 2


def perturb(Q: QuasiCompGraph) -> QuasiCompGraph:
    """Lower every y vector by a uniform margin.

    The margin is half the smallest positive gap w.y[i] - v.x[i], so every
    strict inequality between an x-coordinate and a y-coordinate survives and
    every tie between them breaks downward.  The edge set is unchanged, and
    afterwards no x-coordinate of any vertex equals any y-coordinate of any
    vertex (in particular x(i) != y(i) within every vertex).
    """
    delta = perturbation_margin(Q)
    verts = tuple(
        QuasiCompVertex(v.x, tuple(yi - delta for yi in v.y), v.original_index)
        for v in Q.vertices
    )
    out = QuasiCompGraph(Q.t, verts)
    for v in out.vertices:
        for xi, yi in zip(v.x, v.y):
            assert xi != yi, "perturbation left a tied coordinate"
    return out


TypeVector = tuple[int, ...]  # entries +1 / -1, the sign of y(i) - x(i)


def vertex_type(v: QuasiCompVertex) -> TypeVector:
    sig = []
    for xi, yi in zip(v.x, v.y):
        if xi == yi:
            raise NotPerturbed(f"vertex {v.original_index} has x(i) == y(i)")
        sig.append(1 if yi > xi else -1)
    return tuple(sig)


def type_partition(Q: QuasiCompGraph) -> dict[TypeVector, list[int]]:
    """Partition vertex indices by the sign pattern of y - x.

    Requires a perturbed graph (no x(i) == y(i)); at most 2^t classes.
    """
    classes: dict[TypeVector, list[int]] = {}
    for idx, v in enumerate(Q.vertices):
        classes.setdefault(vertex_type(v), []).append(idx)
    return classes
