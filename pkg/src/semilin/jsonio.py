"""Canonical JSON interchange for every artifact type.

Rationals travel as strings "p/q" (bare "p" when the denominator is 1).
Dumps are canonical (sorted keys, tight separators, trailing newline) so a
replayed run reproduces files byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .coloring import Box, Coloring
from .construct import IncidenceGraph
from .core import (AdjacencyGraph, And, Atom, DnfGraph, LinearForm, Not, Or,
                   SemilinearGraph)
from .decompose import QuasiCompGraph, QuasiCompVertex
from .exact import format_rational, parse_rational
from .ramsey import Cotree, JoinNode, Leaf, RamseyWitness, UnionNode


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _rat(x) -> str:
    return format_rational(Fraction(x))


def _rats(xs) -> list[str]:
    return [_rat(x) for x in xs]


def _unrats(xs) -> tuple[Fraction, ...]:
    return tuple(parse_rational(x) for x in xs)


# -- formulas ---------------------------------------------------------------

def formula_to_obj(node) -> dict:
    if isinstance(node, Atom):
        return {"op": "atom", "form": node.form, "rel": node.rel}
    if isinstance(node, Not):
        return {"op": "not", "child": formula_to_obj(node.child)}
    tag = "and" if isinstance(node, And) else "or"
    return {"op": tag, "children": [formula_to_obj(c) for c in node.children]}


def formula_from_obj(obj: dict):
    op = obj["op"]
    if op == "atom":
        return Atom(obj["form"], obj["rel"])
    if op == "not":
        return Not(formula_from_obj(obj["child"]))
    children = tuple(formula_from_obj(c) for c in obj["children"])
    return And(children) if op == "and" else Or(children)


def _form_to_obj(f: LinearForm) -> dict:
    return {"x": _rats(f.x_coeffs), "y": _rats(f.y_coeffs), "c": _rat(f.c)}


def _form_from_obj(obj: dict) -> LinearForm:
    return LinearForm(_unrats(obj["x"]), _unrats(obj["y"]),
                      parse_rational(obj["c"]))


# -- graphs -----------------------------------------------------------------

def semilinear_to_obj(G: SemilinearGraph) -> dict:
    return {
        "dim": G.dim,
        "vertices": [_rats(v) for v in G.vertices],
        "forms": [_form_to_obj(f) for f in G.forms],
        "formula": formula_to_obj(G.formula),
    }


def dnf_to_obj(D: DnfGraph) -> dict:
    return {
        "dim": D.dim,
        "vertices": [_rats(v) for v in D.vertices],
        "forms": [_form_to_obj(f) for f in D.forms],
        "terms": [list(t) for t in D.terms],
    }


def graph_from_obj(obj: dict):
    """Dispatch on the keys; accepts all graph envelope shapes."""
    if "formula" in obj:
        return SemilinearGraph(
            obj["dim"], tuple(_unrats(v) for v in obj["vertices"]),
            tuple(_form_from_obj(f) for f in obj["forms"]),
            formula_from_obj(obj["formula"]))
    if "terms" in obj:
        return DnfGraph(
            obj["dim"], tuple(_unrats(v) for v in obj["vertices"]),
            tuple(_form_from_obj(f) for f in obj["forms"]),
            tuple(tuple(t) for t in obj["terms"]))
    if "points" in obj:
        return incidence_from_obj(obj)
    if "t" in obj and "vertices" in obj:
        return quasicomp_from_obj(obj)
    if "edges" in obj and "n" in obj:
        return AdjacencyGraph(obj["n"], [tuple(e) for e in obj["edges"]])
    raise ValueError("unrecognized graph envelope")


def adjacency_to_obj(G: AdjacencyGraph) -> dict:
    return {"n": G.n, "edges": sorted([u, v] for u, v in G.edges)}


def quasicomp_to_obj(Q: QuasiCompGraph) -> dict:
    return {"t": Q.t, "vertices": [
        {"x": _rats(v.x), "y": _rats(v.y), "orig": v.original_index}
        for v in Q.vertices]}


def quasicomp_from_obj(obj: dict) -> QuasiCompGraph:
    return QuasiCompGraph(obj["t"], tuple(
        QuasiCompVertex(_unrats(v["x"]), _unrats(v["y"]), v["orig"])
        for v in obj["vertices"]))


def box_to_obj(b: Box) -> dict:
    return {"lo": _rats(b.lower), "hi": _rats(b.upper)}


def box_from_obj(obj: dict) -> Box:
    return Box(_unrats(obj["lo"]), _unrats(obj["hi"]))


def incidence_to_obj(G: IncidenceGraph) -> dict:
    return {"points": [_rats(p) for p in G.points],
            "rects": [box_to_obj(r) for r in G.rects]}


def incidence_from_obj(obj: dict) -> IncidenceGraph:
    return IncidenceGraph([tuple(_unrats(p)) for p in obj["points"]],
                          [box_from_obj(r) for r in obj["rects"]])


# -- certificates -----------------------------------------------------------

def coloring_to_obj(c: Coloring) -> dict:
    keys = sorted(c.colors)
    if keys != list(range(len(keys))):
        raise ValueError("only colorings over 0..n-1 serialize")
    return {"palette": c.palette, "colors": [c.colors[v] for v in keys]}


def coloring_from_obj(obj: dict) -> Coloring:
    return Coloring(dict(enumerate(obj["colors"])), obj["palette"])


def witness_to_obj(w: RamseyWitness) -> dict:
    return {"kind": w.kind, "vertices": sorted(w.vertices)}


def witness_from_obj(obj: dict) -> RamseyWitness:
    return RamseyWitness(obj["kind"], tuple(obj["vertices"]))


def cotree_to_obj(t: Cotree) -> dict:
    if isinstance(t, Leaf):
        return {"op": "leaf", "vertex": t.vertex}
    tag = "union" if isinstance(t, UnionNode) else "join"
    return {"op": tag, "children": [cotree_to_obj(c) for c in t.children]}


def cotree_from_obj(obj: dict) -> Cotree:
    if obj["op"] == "leaf":
        return Leaf(obj["vertex"])
    children = tuple(cotree_from_obj(c) for c in obj["children"])
    return UnionNode(children) if obj["op"] == "union" else JoinNode(children)
