"""Command-line front end.

Artifacts (graphs, colorings, witnesses) are written as canonical JSON and
hashed into a manifest; `replay` re-runs a manifest's command into a fresh
directory and checks the hashes, so determinism is a tested property.  The
stats.csv sidecar carries wall-clock timings and is deliberately outside the
manifest hash set.

Exit codes: 0 ok, 1 verification/precondition failure, 2 usage error,
3 budget or sampling failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .coloring import color_semilinear
from .construct import (PAPER_SCHEDULE, RELAXED_SCHEDULE, ConstantSchedule,
                        bcstt_construction, boxes3d_from_incidence,
                        build_girth_construction, frankl_wilson,
                        incidence_to_ordered_bipartite, shift_graph,
                        superline, superline_semilinear)
from .core import DnfGraph, SemilinearGraph, materialize, to_dnf
from .errors import (OverBudget, PreconditionViolated, ProofInvariantViolated,
                     SamplingFailed, SemilinError, TooLarge)
from .oracle import girth, has_K22, is_cograph_induced, is_proper
from .ramsey import ramsey_witness

STATS_HEADER = ["generator", "params", "n", "edges", "girth", "iterations",
                "seed"]
MATERIALIZE_LIMIT = 2000


def _parse_sched(text: str) -> ConstantSchedule:
    if text == "paper":
        return PAPER_SCHEDULE
    if text == "relaxed":
        return RELAXED_SCHEDULE
    if text.startswith("custom:"):
        raw = json.loads(text[len("custom:"):])
        frac_keys = {"threshold_factor", "degree_slack", "edge_floor"}
        kwargs = {}
        for key, val in raw.items():
            kwargs[key] = Fraction(val) if key in frac_keys else val
        return ConstantSchedule(**kwargs)
    raise argparse.ArgumentTypeError(f"unknown schedule {text!r}")


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _stats_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=STATS_HEADER + ["extra"])
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


class RunResult:
    def __init__(self):
        self.artifacts: dict[str, str] = {}
        self.stats_rows: list[dict] = []
        self.summary: list[str] = []

    def add(self, name: str, text: str):
        self.artifacts[name] = text

    def row(self, **kw):
        base = {k: "" for k in STATS_HEADER + ["extra"]}
        base.update(kw)
        self.stats_rows.append(base)

    def say(self, line: str):
        self.summary.append(line)


def _write_result(result: RunResult, outdir: Path, manifest: dict):
    outdir.mkdir(parents=True, exist_ok=True)
    hashes = {}
    for name, text in result.artifacts.items():
        (outdir / name).write_text(text)
        hashes[name] = _sha256(text)
    if result.stats_rows:
        (outdir / "stats.csv").write_text(_stats_csv(result.stats_rows))
    manifest = dict(manifest)
    manifest["outputs"] = hashes
    manifest["created"] = datetime.now(timezone.utc).isoformat()
    (outdir / "manifest.json").write_text(jsonio.dumps(manifest))
    for line in result.summary:
        print(line)


def _load_graph(path: str):
    with open(path) as fh:
        return jsonio.graph_from_obj(json.load(fh))


def _maybe_edge_count(G) -> int | str:
    if G.n <= MATERIALIZE_LIMIT:
        return len(materialize(G).edges)
    return ""


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def run_gen(params: dict, seed: int, sched_text: str) -> RunResult:
    family = params["family"]
    result = RunResult()
    sched = _parse_sched(sched_text)

    if family == "shift":
        G = shift_graph(params["m"], params["k"])
        result.add("graph.json", jsonio.dumps(jsonio.semilinear_to_obj(G)))
        edges = _maybe_edge_count(G)
        result.row(generator="shift", params=f"m={params['m']};k={params['k']}",
                   n=G.n, edges=edges, seed=seed)
        result.say(f"shift m={params['m']} k={params['k']}: n={G.n} "
                   f"edges={edges}")
    elif family == "fw":
        G = frankl_wilson(params["p"], params["m"])
        result.add("graph.json", jsonio.dumps(jsonio.semilinear_to_obj(G)))
        edges = _maybe_edge_count(G)
        result.row(generator="fw", params=f"p={params['p']};m={params['m']}",
                   n=G.n, edges=edges, seed=seed)
        result.say(f"fw p={params['p']} m={params['m']}: n={G.n} edges={edges}")
    elif family == "bcstt":
        G = bcstt_construction(params["k"], cap=params.get("cap", 20000))
        result.add("incidence.json", jsonio.dumps(jsonio.incidence_to_obj(G)))
        witness = has_K22(G.n_points, G.n_rects, G.incidences())
        gi = girth(G.bipartite_adjacency())
        result.row(generator="bcstt", params=f"k={params['k']}",
                   n=G.n_points + G.n_rects, edges=G.edge_count(),
                   girth=gi, seed=seed,
                   extra=f"k22={'none' if witness is None else witness}")
        result.say(f"bcstt k={params['k']}: points={G.n_points} "
                   f"rects={G.n_rects} edges={G.edge_count()} "
                   f"K22={'free' if witness is None else witness}")
    elif family == "girth":
        G, stats = build_girth_construction(
            params["m"], params["g"], sched, seed,
            max_steps=params.get("max_steps"))
        result.add("incidence.json", jsonio.dumps(jsonio.incidence_to_obj(G)))
        result.row(generator="girth",
                   params=f"m={params['m']};g={params['g']};sched={sched_text}",
                   n=stats["n"], edges=stats["edges"], girth=stats["girth"],
                   iterations=stats["a_degree"], seed=seed,
                   extra=f"steps={stats['steps']};stop={stats['stop_reason']}")
        result.say(
            f"girth m={params['m']} g={params['g']} sched={sched_text}: "
            f"steps={stats['steps']} n={stats['n']} edges={stats['edges']} "
            f"girth={stats['girth']} stop={stats['stop_reason']}")
        if stats["steps"] == 0:
            result.say("no iteration was feasible under this schedule")
    elif family == "superline":
        inc = _load_graph(params["input"])
        H = superline_semilinear(inc)
        result.add("graph.json", jsonio.dumps(jsonio.semilinear_to_obj(H)))
        adj = materialize(H)
        reference = superline(incidence_to_ordered_bipartite(inc))
        if adj != reference:
            raise ProofInvariantViolated("encoding mismatch vs direct rule")
        result.add("adjacency.json",
                   jsonio.dumps(jsonio.adjacency_to_obj(adj)))
        result.row(generator="superline", params=params["input"],
                   n=adj.n, edges=len(adj.edges), seed=seed)
        result.say(f"superline: n={adj.n} edges={len(adj.edges)} "
                   f"(encoding verified)")
    elif family == "boxes3d":
        inc = _load_graph(params["input"])
        boxes = boxes3d_from_incidence(inc)
        result.add("boxes3d.json", jsonio.dumps(
            {"boxes": [jsonio.box_to_obj(b) for b in boxes]}))
        result.row(generator="boxes3d", params=params["input"],
                   n=len(boxes), edges=inc.edge_count(), seed=seed)
        result.say(f"boxes3d: {len(boxes)} boxes, intersection graph verified")
    else:
        raise argparse.ArgumentTypeError(f"unknown family {family!r}")
    return result


# ---------------------------------------------------------------------------
# color / ramsey
# ---------------------------------------------------------------------------

def run_color(graph_path: str, s: int, seed: int) -> RunResult:
    result = RunResult()
    G = _load_graph(graph_path)
    if not isinstance(G, (SemilinearGraph, DnfGraph)):
        raise argparse.ArgumentTypeError(
            "color expects a sign-pattern or DNF graph")
    t0 = time.monotonic()
    coloring = color_semilinear(G, s)
    wall = time.monotonic() - t0
    result.add("coloring.json", jsonio.dumps(jsonio.coloring_to_obj(coloring)))
    checked = ""
    if G.n <= MATERIALIZE_LIMIT:
        bad = is_proper(materialize(G), coloring)
        if bad is not None:
            raise ProofInvariantViolated(f"improper on edge {bad}")
        checked = "proper"
    import math
    norm = coloring.palette / (1 + math.log2(max(G.n, 2)))
    result.row(generator="color", params=f"s={s}", n=G.n,
               edges="", seed=seed,
               extra=f"palette={coloring.palette};norm={norm:.3f};"
                     f"wall={wall:.3f}s;{checked}")
    result.say(f"colored n={G.n} with palette={coloring.palette} "
               f"({checked or 'scan skipped'}) in {wall:.2f}s")
    return result


def run_ramsey(graph_path: str, seed: int) -> RunResult:
    result = RunResult()
    G = _load_graph(graph_path)
    adjacency = None
    if isinstance(G, SemilinearGraph):
        # the original formula evaluates far faster than a wide expansion
        adjacency = materialize(G) if G.n <= MATERIALIZE_LIMIT else None
        G = to_dnf(G)
    if not isinstance(G, DnfGraph):
        raise argparse.ArgumentTypeError("ramsey expects a DNF graph "
                                         "(or a sign-pattern graph)")
    w = ramsey_witness(G, adjacency=adjacency)
    result.add("witness.json", jsonio.dumps(jsonio.witness_to_obj(w)))
    result.row(generator="ramsey", params="", n=G.n, edges="", seed=seed,
               extra=f"kind={w.kind};size={len(w.vertices)}")
    result.say(f"witness: {w.kind} of size {len(w.vertices)} (verified)")
    return result


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def run_verify(graph_path: str, coloring_path: str | None,
               witness_path: str | None, cotree_path: str | None) -> int:
    verdicts = []

    def verdict(check: str, ok: bool, witness=None):
        verdicts.append({"check": check, "ok": ok, "witness": witness})

    try:
        G = _load_graph(graph_path)
    except Exception as err:
        verdict("parse:graph", False, str(err))
        print(json.dumps(verdicts, indent=2, default=str))
        return 1
    from .construct import IncidenceGraph
    from .core import AdjacencyGraph

    if isinstance(G, IncidenceGraph):
        adj = G.bipartite_adjacency()
        verdict("incidence-consistency", True)
    elif isinstance(G, AdjacencyGraph):
        adj = G
    else:
        adj = materialize(G)
    verdict("graph", True)

    if coloring_path:
        try:
            with open(coloring_path) as fh:
                col = jsonio.coloring_from_obj(json.load(fh))
            bad = is_proper(adj, col)
            verdict("coloring-proper", bad is None, bad)
        except Exception as err:
            verdict("parse:coloring", False, str(err))
    if witness_path:
        try:
            with open(witness_path) as fh:
                w = jsonio.witness_from_obj(json.load(fh))
            vs = list(w.vertices)
            ok = True
            cex = None
            for i, u in enumerate(vs):
                for v in vs[i + 1:]:
                    has = adj.has_edge(u, v)
                    if (w.kind == "clique") != has:
                        ok = False
                        cex = (u, v)
                        break
                if not ok:
                    break
            verdict("witness-consistent", ok, cex)
        except Exception as err:
            verdict("parse:witness", False, str(err))
    if cotree_path:
        try:
            with open(cotree_path) as fh:
                tree = jsonio.cotree_from_obj(json.load(fh))
            cex = is_cograph_induced(adj, tree)
            verdict("cotree-valid", cex is None, cex)
        except Exception as err:
            verdict("parse:cotree", False, str(err))

    print(json.dumps(verdicts, indent=2, default=str))
    return 0 if all(v["ok"] for v in verdicts) else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="semilin", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph family")
    gen.add_argument("family", choices=["shift", "fw", "bcstt", "girth",
                                        "superline", "boxes3d"])
    gen.add_argument("--m", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--p", type=int)
    gen.add_argument("--g", type=int)
    gen.add_argument("--cap", type=int, default=20000)
    gen.add_argument("--max-steps", type=int, default=None)
    gen.add_argument("--input", type=str)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--sched", type=str, default="paper")
    gen.add_argument("--out", type=str, required=True)

    color = sub.add_parser("color", help="run the coloring pipeline")
    color.add_argument("graph")
    color.add_argument("--s", type=int, required=True)
    color.add_argument("--seed", type=int, default=0)
    color.add_argument("--out", type=str, required=True)

    ramsey = sub.add_parser("ramsey", help="extract a clique/IS witness")
    ramsey.add_argument("graph")
    ramsey.add_argument("--seed", type=int, default=0)
    ramsey.add_argument("--out", type=str, required=True)

    verify = sub.add_parser("verify", help="oracle-check artifacts")
    verify.add_argument("graph")
    verify.add_argument("--coloring")
    verify.add_argument("--witness")
    verify.add_argument("--cotree")

    replay = sub.add_parser("replay", help="re-run a manifest and compare")
    replay.add_argument("manifest")
    replay.add_argument("--out", type=str, required=True)

    return top


def _gen_params_from_args(args) -> dict:
    params = {"family": args.family}
    for key in ("m", "k", "p", "g", "input"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.family == "bcstt":
        params["cap"] = args.cap
    if args.family == "girth" and args.max_steps is not None:
        params["max_steps"] = args.max_steps
    return params


def _dispatch(manifest: dict) -> RunResult:
    cmd = manifest["command"]
    if cmd == "gen":
        return run_gen(manifest["params"], manifest["seed"], manifest["sched"])
    if cmd == "color":
        return run_color(manifest["params"]["graph"], manifest["params"]["s"],
                         manifest["seed"])
    if cmd == "ramsey":
        return run_ramsey(manifest["params"]["graph"], manifest["seed"])
    raise ValueError(f"manifest command {cmd!r} is not replayable")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            manifest = {"command": "gen", "params": _gen_params_from_args(args),
                        "seed": args.seed, "sched": args.sched}
            result = _dispatch(manifest)
            _write_result(result, Path(args.out), manifest)
            return 0
        if args.command == "color":
            manifest = {"command": "color",
                        "params": {"graph": args.graph, "s": args.s},
                        "seed": args.seed, "sched": "paper"}
            result = _dispatch(manifest)
            _write_result(result, Path(args.out), manifest)
            return 0
        if args.command == "ramsey":
            manifest = {"command": "ramsey", "params": {"graph": args.graph},
                        "seed": args.seed, "sched": "paper"}
            result = _dispatch(manifest)
            _write_result(result, Path(args.out), manifest)
            return 0
        if args.command == "verify":
            return run_verify(args.graph, args.coloring, args.witness,
                              args.cotree)
        if args.command == "replay":
            with open(args.manifest) as fh:
                manifest = json.load(fh)
            result = _dispatch(manifest)
            outdir = Path(args.out)
            _write_result(result, outdir,
                          {k: manifest[k] for k in
                           ("command", "params", "seed", "sched")})
            mismatches = []
            for name, want in manifest["outputs"].items():
                got = _sha256((outdir / name).read_text())
                if got != want:
                    mismatches.append(name)
            if mismatches:
                print(f"replay mismatch: {mismatches}")
                return 1
            print(f"replay ok: {sorted(manifest['outputs'])} byte-identical")
            return 0
        raise AssertionError("unreachable")
    except PreconditionViolated as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        if err.witness is not None:
            print(f"witness: {err.witness}", file=sys.stderr)
        return 1
    except ProofInvariantViolated as err:
        print(f"invariant violated: {err}", file=sys.stderr)
        if err.counterexample is not None:
            print(f"counterexample: {err.counterexample}", file=sys.stderr)
        return 1
    except (SamplingFailed, OverBudget, TooLarge) as err:
        print(f"resource failure: {err}", file=sys.stderr)
        return 3
    except SemilinError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
