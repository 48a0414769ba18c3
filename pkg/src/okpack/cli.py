"""Command-line front end: generation, analysis, FVS computation, exact
solving, and the benchmark harness.

Exit codes: 0 success, 1 algorithmic failure (capped analysis, invalid
result, generation shortfall, cross-check mismatch), 2 bad flags or
malformed input, 3 exhausted search budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from math import inf

from okpack import branching, detectors, generators, oracles, solvers
from okpack import fvs as fvs_mod
from okpack.edgelist import EdgeListError, load_graph, write_edge_list
from okpack.errors import (
    BudgetExceeded,
    CapExceeded,
    EdgePlacementShortfall,
    TooLarge,
)
from okpack.graphcore import Graph, cycle_rank, girth

CSV_HEADER = [
    "family",
    "k",
    "n",
    "m",
    "cycle_rank",
    "girth",
    "fvs_size",
    "optimal_fvs",
    "elapsed_ms",
    "seed",
]


def _err(msg: str) -> None:
    print(f"okpack: {msg}", file=sys.stderr)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_json(data: dict) -> None:
    print(json.dumps(data, sort_keys=True))


def _load(args) -> Graph:
    return load_graph(args.path, dimacs=getattr(args, "dimacs", False))


# -- gen ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    try:
        if args.generator == "gk":
            g, _ = generators.gk(args.k)
        elif args.generator == "forest-plus":
            g = generators.forest_plus_edges(
                args.n, args.extra, args.min_girth, args.seed
            )
        elif args.generator == "cycle":
            g = generators.cycle(args.n)
        elif args.generator == "theta":
            g = generators.theta(*args.p)
        else:
            g = generators.complete_bipartite(args.a, args.b)
    except EdgePlacementShortfall as exc:
        _err(str(exc))
        return 1
    except ValueError as exc:
        _err(str(exc))
        return 2
    _emit(write_edge_list(g), args.out)
    return 0


# -- analyze ------------------------------------------------------------------------


def _cmd_analyze(args) -> int:
    try:
        g = _load(args)
    except (OSError, EdgeListError) as exc:
        _err(str(exc))
        return 2
    report: dict = {}
    rc = 0
    if args.girth:
        value = girth(g)
        report["girth"] = None if value == inf else value
    if args.cycle_rank:
        report["cycle_rank"] = cycle_rank(g)
    if args.icp:
        try:
            value, witness = detectors.icp(g, args.icp_cap)
            report["icp"] = value
            report["icp_witness"] = [list(c) for c in witness.cycles]
        except CapExceeded as exc:
            _err(str(exc))
            report["capped"] = True
            rc = 1
    if args.okfree is not None:
        try:
            ok, witness = detectors.is_ok_free(g, args.okfree, args.icp_cap)
            report["okfree"] = ok
            if witness is not None:
                report["okfree_witness"] = [list(c) for c in witness.cycles]
        except CapExceeded as exc:
            _err(str(exc))
            report["capped"] = True
            rc = 1
    if args.ktt is not None:
        try:
            witness = detectors.has_ktt_subgraph(g, args.ktt)
        except BudgetExceeded as exc:
            _err(str(exc))
            report["capped"] = True
            witness = None
            rc = 1
        report["ktt"] = witness is not None
        if witness is not None:
            report["ktt_witness"] = {
                "left": list(witness.left),
                "right": list(witness.right),
            }
    _print_json(report)
    return rc


# -- fvs ----------------------------------------------------------------------------


def _cmd_fvs(args) -> int:
    try:
        g = _load(args)
    except (OSError, EdgeListError) as exc:
        _err(str(exc))
        return 2
    if args.mode == "log":
        cfg = fvs_mod.FvsConfig(
            girth_target=args.girth_target,
            fallback_rank_threshold=args.fallback_rank,
            fallback_node_budget=args.budget,
        )
        try:
            result = fvs_mod.log_fvs(g, cfg)
        except AssertionError as exc:
            _err(f"validation failed: {exc}")
            return 1
        data = result.to_json_dict()
    else:
        try:
            vertices = fvs_mod.exact_fvs(g, args.budget)
        except BudgetExceeded as exc:
            _err(str(exc))
            return 3
        data = {
            "fvs": list(vertices),
            "input_rank": cycle_rank(g),
            "valid": True,
            "mode": "exact",
        }
    if not fvs_mod.is_fvs(g, data["fvs"]):
        _err("computed set is not a feedback vertex set")
        return 1
    if args.json:
        _print_json(data)
    else:
        print(f"fvs size {len(data['fvs'])}: {' '.join(map(str, data['fvs']))}")
        if "phases" in data:
            phases = data["phases"]
            print(f"  sparsify removed: {phases['sparsify_removed']}")
            for v, deg, before, after in phases["greedy_steps"]:
                print(f"  greedy: vertex {v} degree {deg} rank {before} -> {after}")
            print(
                f"  fallback removed: {phases['fallback_removed']}"
                f" (exact={phases['fallback_exact']})"
            )
    return 0


# -- solve --------------------------------------------------------------------------


def _brute_chromatic(g: Graph) -> int:
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    verts = g.vertices
    for q in range(2, g.n + 1):
        colors: dict[int, int] = {}

        def backtrack(i: int) -> bool:
            if i == len(verts):
                return True
            v = verts[i]
            for c in range(1, q + 1):
                if all(colors.get(u) != c for u in g.neighbors(v)):
                    colors[v] = c
                    if backtrack(i + 1):
                        return True
                    del colors[v]
            return False

        if backtrack(0):
            return q
    raise AssertionError("unreachable: n colors always suffice")


def _branch_cfg(args) -> branching.BranchConfig:
    return branching.BranchConfig(
        max_q=args.max_q,
        packing_enum_budget=args.pack_budget,
        node_budget=args.node_budget,
    )


def _solve_one(problem: str, method: str, g: Graph, args) -> dict:
    if problem in ("mis", "vc"):
        if method == "branch":
            mis, stats = branching.qmis(g, _branch_cfg(args))
            extra = {"stats": stats.to_json_dict()}
        elif method == "fvs":
            x = fvs_mod.log_fvs(g).vertices
            mis = solvers.mis_via_fvs(g, x)
            extra = {"fvs_size": len(x)}
        else:
            mis = oracles.brute_mis(g)
            extra = {}
        if problem == "mis":
            return {"problem": "mis", "method": method, "size": len(mis), "vertices": list(mis), **extra}
        cover = [v for v in g.vertices if v not in set(mis)]
        return {"problem": "vc", "method": method, "size": len(cover), "vertices": cover, **extra}
    if problem == "color3":
        if method == "branch":
            assignment = branching.three_coloring(g, _branch_cfg(args))
        elif method == "fvs":
            x = fvs_mod.log_fvs(g).vertices
            assignment = solvers.q_coloring_via_fvs(g, x, 3)
        else:
            assignment = oracles.brute_3color(g)
        data = {"problem": "color3", "method": method, "colorable": assignment is not None}
        if assignment is not None:
            data["coloring"] = {str(v): c for v, c in assignment.items}
        return data
    # chroma
    if method == "fvs":
        x = fvs_mod.log_fvs(g).vertices
        value = solvers.chromatic_number_via_fvs(g, x)
    elif method == "brute":
        value = _brute_chromatic(g)
    else:
        raise ValueError("chroma supports methods fvs and brute")
    return {"problem": "chroma", "method": method, "chromatic_number": value}


def _solutions_agree(problem: str, a: dict, b: dict) -> bool:
    if problem in ("mis", "vc"):
        return a["size"] == b["size"]
    if problem == "color3":
        return a["colorable"] == b["colorable"]
    return a["chromatic_number"] == b["chromatic_number"]


def _cmd_solve(args) -> int:
    try:
        g = _load(args)
    except (OSError, EdgeListError) as exc:
        _err(str(exc))
        return 2
    try:
        result = _solve_one(args.problem, args.method, g, args)
        if args.cross_check:
            other = _solve_one(args.problem, args.cross_check, g, args)
            if not _solutions_agree(args.problem, result, other):
                _err(
                    f"cross-check mismatch: {args.method} vs {args.cross_check}: "
                    f"{result} vs {other}"
                )
                return 1
            result["cross_check"] = {"method": args.cross_check, "agrees": True}
    except (BudgetExceeded, CapExceeded) as exc:
        _err(str(exc))
        return 3
    except (TooLarge, ValueError) as exc:
        _err(str(exc))
        return 2
    _print_json(result)
    return 0


# -- bench --------------------------------------------------------------------------


def _bench_gk_row(k: int) -> dict:
    g, _ = generators.gk(k)
    start = time.perf_counter()
    result = fvs_mod.log_fvs(g)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    if not result.valid:
        raise AssertionError("benchmark produced an invalid FVS")
    gv = girth(g)
    return {
        "family": "gk",
        "k": k,
        "n": g.n,
        "m": g.m,
        "cycle_rank": result.input_rank,
        "girth": "inf" if gv == inf else gv,
        "fvs_size": len(result.vertices),
        "optimal_fvs": k - 1 if k >= 2 else 0,
        "elapsed_ms": f"{elapsed_ms:.3f}",
        "seed": "",
    }


def _bench_forest_row(n: int, extra: int, min_girth: int, seed: int) -> dict:
    try:
        g = generators.forest_plus_edges(n, extra, min_girth, seed)
    except EdgePlacementShortfall as exc:
        g = exc.graph
    start = time.perf_counter()
    result = fvs_mod.log_fvs(g)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    rank = result.input_rank
    optimal: str | int = ""
    if rank <= 12:
        optimal = len(fvs_mod.exact_fvs(g))
    gv = girth(g)
    return {
        "family": "forest-plus",
        "k": extra,
        "n": g.n,
        "m": g.m,
        "cycle_rank": rank,
        "girth": "inf" if gv == inf else gv,
        "fvs_size": len(result.vertices),
        "optimal_fvs": optimal,
        "elapsed_ms": f"{elapsed_ms:.3f}",
        "seed": seed,
    }


def _cmd_bench(args) -> int:
    if args.family == "gk":
        if args.kmax < 1:
            _err("--kmax must be at least 1")
            return 2
        tasks = [(_bench_gk_row, (k,)) for k in range(1, args.kmax + 1)]
    else:
        if not args.sizes:
            _err("--sizes is required for forest-plus")
            return 2
        try:
            sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
        except ValueError:
            _err(f"bad --sizes value: {args.sizes!r}")
            return 2
        if not sizes:
            _err("empty --sizes selection")
            return 2
        tasks = [
            (_bench_forest_row, (n, args.extra, args.min_girth, args.seed + i))
            for i, n in enumerate(sizes)
        ]
    workers = int(os.environ.get("OKPACK_THREADS", "1") or "1")
    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(fn, *fargs) for fn, fargs in tasks]
                rows = [f.result() for f in futures]  # submit order, not finish order
        else:
            rows = [fn(*fargs) for fn, fargs in tasks]
    except AssertionError as exc:
        _err(f"invalid FVS during benchmark: {exc}")
        return 1
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), args.csv)
    return 0


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="okpack",
        description="Graph algorithms for graphs with few independent cycles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph as an edge-list file")
    gen_sub = gen.add_subparsers(dest="generator", required=True)
    g_gk = gen_sub.add_parser("gk", help="the extremal lower-bound graph")
    g_gk.add_argument("--k", type=int, required=True)
    g_fp = gen_sub.add_parser("forest-plus", help="random tree plus extra edges")
    g_fp.add_argument("--n", type=int, required=True)
    g_fp.add_argument("--extra", type=int, required=True)
    g_fp.add_argument("--min-girth", type=int, default=3)
    g_fp.add_argument("--seed", type=int, default=0)
    g_cy = gen_sub.add_parser("cycle", help="a cycle")
    g_cy.add_argument("--n", type=int, required=True)
    g_th = gen_sub.add_parser("theta", help="two hubs joined by three paths")
    g_th.add_argument("--p", type=int, nargs=3, required=True, metavar=("A", "B", "C"))
    g_ka = gen_sub.add_parser("kab", help="complete bipartite graph")
    g_ka.add_argument("--a", type=int, required=True)
    g_ka.add_argument("--b", type=int, required=True)
    for p in (g_gk, g_fp, g_cy, g_th, g_ka):
        p.add_argument("--out", default=None)

    an = sub.add_parser("analyze", help="structural report as JSON")
    an.add_argument("path")
    an.add_argument("--girth", action="store_true")
    an.add_argument("--cycle-rank", dest="cycle_rank", action="store_true")
    an.add_argument("--icp", action="store_true")
    an.add_argument("--icp-cap", dest="icp_cap", type=int, default=100_000)
    an.add_argument("--ktt", type=int, default=None)
    an.add_argument("--okfree", type=int, default=None)
    an.add_argument("--dimacs", action="store_true")

    fv = sub.add_parser("fvs", help="compute a feedback vertex set")
    fv.add_argument("path")
    fv.add_argument("--mode", choices=("log", "exact"), default="log")
    fv.add_argument("--girth-target", dest="girth_target", type=int, default=11)
    fv.add_argument("--fallback-rank", dest="fallback_rank", type=int, default=16)
    fv.add_argument("--budget", type=int, default=200_000)
    fv.add_argument("--json", action="store_true")
    fv.add_argument("--dimacs", action="store_true")

    so = sub.add_parser("solve", help="solve an optimization problem exactly")
    so.add_argument("problem", choices=("mis", "vc", "color3", "chroma"))
    so.add_argument("path")
    so.add_argument("--method", choices=("branch", "fvs", "brute"), default="fvs")
    so.add_argument("--cross-check", dest="cross_check", choices=("branch", "fvs", "brute"), default=None)
    so.add_argument("--max-q", dest="max_q", type=int, default=3)
    so.add_argument("--node-budget", dest="node_budget", type=int, default=200_000)
    so.add_argument("--pack-budget", dest="pack_budget", type=int, default=500_000)
    so.add_argument("--dimacs", action="store_true")

    be = sub.add_parser("bench", help="benchmark the FVS pipeline to CSV")
    be.add_argument("family", choices=("gk", "forest-plus"))
    be.add_argument("--kmax", type=int, default=8)
    be.add_argument("--sizes", default=None)
    be.add_argument("--extra", type=int, default=2)
    be.add_argument("--min-girth", dest="min_girth", type=int, default=3)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--csv", default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "gen":
        return _cmd_gen(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "fvs":
        return _cmd_fvs(args)
    if args.command == "solve":
        return _cmd_solve(args)
    return _cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
