"""Sign-pattern graph representations over exact rationals.

Two interchangeable edge encodings live here: the general one (arbitrary
Boolean formula over three-way sign atoms of linear forms) and the strict-DNF
one (an OR of ANDs of strict "< 0" atoms).  Normalization from the first to
the second replaces non-strict atoms by strict ones shifted by a margin that
is provably smaller than any nonzero form value on the vertex set, so edges
are preserved exactly.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidPair, SymmetryError

Vector = tuple[Fraction, ...]

LT, LE, EQ = "lt", "le", "eq"


# ---------------------------------------------------------------------------
# Linear forms and formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    """f(x, y) = c + sum_i x_coeffs[i]*x[i] + sum_j y_coeffs[j]*y[j]."""

    x_coeffs: Vector
    y_coeffs: Vector
    c: Fraction = Fraction(0)

    def __call__(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        v = self.c
        for a, xi in zip(self.x_coeffs, x):
            v += a * xi
        for b, yj in zip(self.y_coeffs, y):
            v += b * yj
        return v

    def swapped(self) -> "LinearForm":
        """The form with the two vertex arguments exchanged."""
        return LinearForm(self.y_coeffs, self.x_coeffs, self.c)

    def negated(self) -> "LinearForm":
        return LinearForm(
            tuple(-a for a in self.x_coeffs),
            tuple(-b for b in self.y_coeffs),
            -self.c,
        )

    def shifted(self, delta: Fraction) -> "LinearForm":
        """The form with `delta` added to the constant term."""
        return LinearForm(self.x_coeffs, self.y_coeffs, self.c + delta)

    def signature(self) -> tuple:
        return (self.x_coeffs, self.y_coeffs, self.c)


def form(x: Iterable = (), y: Iterable = (), c=0, dim: int | None = None) -> LinearForm:
    """Convenience constructor accepting ints and short coefficient lists."""
    xs = [Fraction(a) for a in x]
    ys = [Fraction(b) for b in y]
    if dim is not None:
        xs += [Fraction(0)] * (dim - len(xs))
        ys += [Fraction(0)] * (dim - len(ys))
    return LinearForm(tuple(xs), tuple(ys), Fraction(c))


@dataclass(frozen=True)
class Atom:
    form: int
    rel: str  # one of LT, LE, EQ

    def __post_init__(self):
        if self.rel not in (LT, LE, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    children: tuple


@dataclass(frozen=True)
class Or:
    children: tuple


Formula = Atom | Not | And | Or


def f_and(*children) -> And:
    return And(tuple(children))


def f_or(*children) -> Or:
    return Or(tuple(children))


def eval_formula(node: Formula, values: Sequence[Fraction], _memo=None) -> bool:
    """Evaluate a formula on a vector of form values.

    Shared subtrees (the formula may be a DAG) are evaluated once.
    """
    if _memo is None:
        _memo = {}
    key = id(node)
    if key in _memo:
        return _memo[key]
    if isinstance(node, Atom):
        v = values[node.form]
        r = v < 0 if node.rel == LT else (v <= 0 if node.rel == LE else v == 0)
    elif isinstance(node, Not):
        r = not eval_formula(node.child, values, _memo)
    elif isinstance(node, And):
        r = all(eval_formula(c, values, _memo) for c in node.children)
    elif isinstance(node, Or):
        r = any(eval_formula(c, values, _memo) for c in node.children)
    else:
        raise TypeError(f"not a formula node: {node!r}")
    _memo[key] = r
    return r


def formula_atoms(node: Formula) -> set[int]:
    """Set of form indices referenced by a formula."""
    out: set[int] = set()
    seen: set[int] = set()
    stack = [node]
    while stack:
        cur = stack.pop()
        if id(cur) in seen:
            continue
        seen.add(id(cur))
        if isinstance(cur, Atom):
            out.add(cur.form)
        elif isinstance(cur, Not):
            stack.append(cur.child)
        else:
            stack.extend(cur.children)
    return out


def _canonical(node: Formula, form_key) -> tuple:
    if isinstance(node, Atom):
        return ("atom", form_key(node.form), node.rel)
    if isinstance(node, Not):
        return ("not", _canonical(node.child, form_key))
    tag = "and" if isinstance(node, And) else "or"
    return (tag, tuple(sorted(_canonical(c, form_key) for c in node.children)))


# ---------------------------------------------------------------------------
# Graph types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemilinearGraph:
    """Vertices in R^dim; edge iff the formula holds on the pair's sign pattern."""

    dim: int
    vertices: tuple[Vector, ...]
    forms: tuple[LinearForm, ...]
    formula: Formula

    @property
    def n(self) -> int:
        return len(self.vertices)

    def form_values(self, u: int, v: int) -> list[Fraction]:
        x, y = self.vertices[u], self.vertices[v]
        return [f(x, y) for f in self.forms]

    def edge_value(self, u: int, v: int) -> bool:
        return eval_formula(self.formula, self.form_values(u, v))


@dataclass(frozen=True)
class DnfGraph:
    """Edge iff some term has every listed form strictly negative on the pair."""

    dim: int
    vertices: tuple[Vector, ...]
    forms: tuple[LinearForm, ...]
    terms: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def term_holds(self, term: tuple[int, ...], u: int, v: int) -> bool:
        x, y = self.vertices[u], self.vertices[v]
        return all(self.forms[i](x, y) < 0 for i in term)

    def edge_value(self, u: int, v: int) -> bool:
        return any(self.term_holds(t, u, v) for t in self.terms)

    def restrict(self, keep: Sequence[int]) -> "DnfGraph":
        return DnfGraph(self.dim, tuple(self.vertices[i] for i in keep),
                        self.forms, self.terms)

    def with_terms(self, terms) -> "DnfGraph":
        return DnfGraph(self.dim, self.vertices, self.forms, tuple(terms))


class AdjacencyGraph:
    """Materialized simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = n
        norm = set()
        for u, v in edges:
            if u == v:
                raise InvalidPair("self-loop in adjacency graph")
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError("edge endpoint out of range")
            norm.add((u, v) if u < v else (v, u))
        self.edges: frozenset[tuple[int, int]] = frozenset(norm)
        self._adj = None

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges if u < v else (v, u) in self.edges

    def adj(self) -> list[set[int]]:
        if self._adj is None:
            a = [set() for _ in range(self.n)]
            for u, v in self.edges:
                a[u].add(v)
                a[v].add(u)
            self._adj = a
        return self._adj

    def degree(self, v: int) -> int:
        return len(self.adj()[v])

    def complement(self) -> "AdjacencyGraph":
        es = [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
              if (u, v) not in self.edges]
        return AdjacencyGraph(self.n, es)

    def induced(self, verts: Sequence[int]) -> "AdjacencyGraph":
        """Induced subgraph; vertex i of the result is verts[i]."""
        pos = {v: i for i, v in enumerate(verts)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return AdjacencyGraph(len(verts), es)

    def __eq__(self, other):
        return isinstance(other, AdjacencyGraph) and \
            self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"AdjacencyGraph(n={self.n}, m={len(self.edges)})"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def eval_edge(G: SemilinearGraph | DnfGraph, u: int, v: int) -> bool:
    """Edge predicate on an ordered pair of distinct vertex indices."""
    if u == v:
        raise InvalidPair(f"eval_edge({u}, {u}): self-pairs carry no edge")
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise IndexError("vertex index out of range")
    return G.edge_value(u, v)


def symmetry_check(G: SemilinearGraph | DnfGraph) -> tuple[int, int] | None:
    """None when the edge predicate is swap-invariant on the vertex set,
    otherwise a witness pair (u, v) with differing values.

    A structural test (the formula is literally its own mirror image up to
    AND/OR reordering and coefficient-identical forms) short-circuits the
    pairwise scan; it is what keeps large, hand-built instances cheap.
    """
    if _structurally_symmetric(G):
        return None
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if G.edge_value(u, v) != G.edge_value(v, u):
                return (u, v)
    return None


def _structurally_symmetric(G) -> bool:
    if isinstance(G, DnfGraph):
        node = Or(tuple(And(tuple(Atom(i, LT) for i in t)) for t in G.terms))
    else:
        node = G.formula
    plain = _canonical(node, lambda i: G.forms[i].signature())
    mirrored = _canonical(node, lambda i: G.forms[i].swapped().signature())
    return plain == mirrored


def _min_nonzero_pair_value(G) -> Fraction | None:
    """min |f| over nonzero form values on ordered distinct vertex pairs.

    Runs in O(t * n log n) by splitting each form into its x-part and y-part
    and scanning sorted value arrays instead of all pairs.  Each vertex index
    sits in exactly one value group, so looking two groups to either side of
    the insertion point is enough even when the nearest group is the excluded
    index itself or gives a zero.
    """
    n = G.n
    best: Fraction | None = None
    for f in G.forms:
        gx = [f.c + sum(a * x for a, x in zip(f.x_coeffs, vtx))
              for vtx in G.vertices]
        hy = [sum(b * y for b, y in zip(f.y_coeffs, vtx)) for vtx in G.vertices]
        order = sorted(range(n), key=lambda j: hy[j])
        groups: list[tuple[Fraction, list[int]]] = []
        for j in order:
            if groups and groups[-1][0] == hy[j]:
                groups[-1][1].append(j)
            else:
                groups.append((hy[j], [j]))
        gvals = [g[0] for g in groups]
        for i in range(n):
            target = -gx[i]
            pos = bisect_left(gvals, target)
            for p in range(pos - 2, pos + 3):
                if not (0 <= p < len(groups)):
                    continue
                val, members = groups[p]
                if members == [i]:
                    continue
                d = abs(gx[i] + val)
                if d != 0 and (best is None or d < best):
                    best = d
    return best


def epsilon_for(G: SemilinearGraph) -> Fraction:
    """Half the smallest nonzero |f_i(x, y)| over ordered distinct vertex
    pairs; 1 when every value vanishes (any positive margin then works).

    The returned eps satisfies f <= 0  iff  f - eps < 0 on every pair.
    """
    if G.n == 0:
        raise ValueError("epsilon_for needs a nonempty vertex set")
    best = _min_nonzero_pair_value(G)
    if best is None:
        return Fraction(1)
    return best / 2


TRUE_FORM_SIG = "always-true"


def _strict_literal_tree(node: Formula, neg: bool, forms, eps: Fraction):
    """Rewrite to AND/OR over strict literals (LinearForm meaning f < 0)."""
    if isinstance(node, Not):
        return _strict_literal_tree(node.child, not neg, forms, eps)
    if isinstance(node, Atom):
        f = forms[node.form]
        if node.rel == LT:
            return ("lit", f) if not neg else ("lit", f.negated().shifted(-eps))
        if node.rel == LE:
            return ("lit", f.shifted(-eps)) if not neg else ("lit", f.negated())
        # EQ
        if not neg:
            return ("and", [("lit", f.shifted(-eps)),
                            ("lit", f.negated().shifted(-eps))])
        return ("or", [("lit", f), ("lit", f.negated())])
    tag = "and" if isinstance(node, And) else "or"
    if neg:
        tag = "or" if tag == "and" else "and"
    return (tag, [_strict_literal_tree(c, neg, forms, eps) for c in node.children])


def _expand_dnf(tree) -> list[list[LinearForm]]:
    kind = tree[0]
    if kind == "lit":
        return [[tree[1]]]
    if kind == "or":
        out = []
        for c in tree[1]:
            out.extend(_expand_dnf(c))
        return out
    # and: distribute
    terms: list[list[LinearForm]] = [[]]
    for c in tree[1]:
        sub = _expand_dnf(c)
        terms = [t + s for t in terms for s in sub]
    return terms


def to_dnf(G: SemilinearGraph, verify_edges: bool | None = None) -> DnfGraph:
    """Normalize to the strict-DNF encoding with the same edge set.

    Non-strict atoms are shifted by eps = epsilon_for(G), negations are
    pushed to the leaves, the result is distributed into DNF, and terms are
    padded with the always-true atom (-1 < 0) to uniform length.

    verify_edges: pairwise re-check of edge equality.  Defaults to on while
    pairs * terms * width stays small; the per-atom rewrites are sound for
    every pair by the choice of eps, so expensive instances (many vertices,
    or formulas with exponential expansions) skip the quadratic scan.
    """
    if symmetry_check(G) is not None:
        raise SymmetryError("formula is not swap-symmetric on this vertex set")
    eps = epsilon_for(G)
    tree = _strict_literal_tree(G.formula, False, G.forms, eps)
    raw_terms = _expand_dnf(tree)

    table: dict[tuple, int] = {}
    forms: list[LinearForm] = []

    def intern(f: LinearForm) -> int:
        key = f.signature()
        if key not in table:
            table[key] = len(forms)
            forms.append(f)
        return table[key]

    width = max((len(t) for t in raw_terms), default=1)
    width = max(width, 1)
    true_form = LinearForm((Fraction(0),) * G.dim, (Fraction(0),) * G.dim,
                           Fraction(-1))
    terms = []
    for t in raw_terms:
        idxs = [intern(f) for f in t]
        pad = intern(true_form)
        idxs += [pad] * (width - len(idxs))
        terms.append(tuple(idxs))

    D = DnfGraph(G.dim, G.vertices, tuple(forms), tuple(terms))
    if verify_edges is None:
        work = G.n * G.n * sum(len(t) for t in terms)
        verify_edges = G.n <= 300 and work <= 2_000_000
    if verify_edges:
        for u in range(G.n):
            for v in range(u + 1, G.n):
                if G.edge_value(u, v) != D.edge_value(u, v):
                    raise AssertionError(
                        f"DNF normalization changed edge ({u}, {v})")
    return D


def materialize(G: SemilinearGraph | DnfGraph) -> AdjacencyGraph:
    """Evaluate every unordered pair into an explicit edge set."""
    if symmetry_check(G) is not None:
        raise SymmetryError("cannot materialize an asymmetric edge predicate")
    edges = [(u, v) for u in range(G.n) for v in range(u + 1, G.n)
             if G.edge_value(u, v)]
    return AdjacencyGraph(G.n, edges)
