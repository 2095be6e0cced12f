"""Command line entry point.  Every verb prints JSON on stdout."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from fractions import Fraction

from .clustering import build_well_connected_cover
from .cover import build_double_cover
from .cycles import min_cycle_exact_weight
from .framework import DEFAULT_KMAX, DEFAULT_STATE_LIMIT, solve
from .generators import FAMILIES, GeneratorSpec, generate, generate_text
from .oracles import ENUMERATION_LIMIT, exact_bipartition_graph
from .planar import PlanarError, primal_and_dual, read_instance, with_outer_vertex
from .skeleton import build_skeleton, charge_counts
from .spanner import build_spanner, target_window
from .verify import all_passed, verify


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    return x


def _emit(obj, out=None):
    text = json.dumps(_plain(obj), indent=1, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dual(args):
    g, outer = read_instance(args.input)
    primal, dual, anchor = primal_and_dual(g, outer)
    return g, primal, dual, anchor


def _lambda(args, primal, anchor):
    if args.lam is not None:
        return Fraction(args.lam)
    W = sum(primal.vertex_weights)
    if primal.n <= ENUMERATION_LIMIT and W > 0:
        lo, hi = target_window(W, Fraction(args.b))
        return exact_bipartition_graph(primal, lo, hi, anchor).cost / W
    return Fraction(1)


def cmd_gen(args):
    params = json.loads(args.params) if args.params else {}
    spec = GeneratorSpec(args.family, params, args.weights, args.costs, args.seed)
    text = generate_text(spec)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_exact(args):
    g, outer = read_instance(args.input)
    primal, anchor = with_outer_vertex(g, outer)
    W = sum(primal.vertex_weights)
    lo, hi = (args.lo, args.hi) if args.lo is not None else target_window(W, Fraction(args.b))
    sol = exact_bipartition_graph(primal, lo, hi, anchor)
    U = sorted(v for v in sol.side_u if v < g.n)
    _emit({"window": [lo, hi], "cost": sol.cost, "weight_u": sol.weight_u, "balance": sol.balance, "U": U})


def cmd_solve(args):
    g, outer = read_instance(args.input)
    lams = [Fraction(args.lam)] if args.lam is not None else None
    sol, rep = solve(g, args.b, args.epsilon, lams, args.kmax, args.state_limit, args.stage, outer)
    out = rep.as_dict()
    if sol is not None:
        out["U"] = sorted(sol.side_u)
    _emit(out, args.report)


def cmd_skeleton(args):
    _, primal, dual, anchor = _dual(args)
    lam = _lambda(args, primal, anchor)
    sk = build_skeleton(dual, lam, args.epsilon)
    counts = charge_counts(sk)
    hist: dict = {}
    for c in counts:
        hist[c] = hist.get(c, 0) + 1
    _emit(
        {
            "lambda": lam,
            "alpha": sk.alpha,
            "cycles": {cid: list(sk.cycles[cid]) for cid in sk.ids},
            "ids": list(sk.ids),
            "parent": list(sk.tree.parent),
            "preorder": list(sk.tree.preorder),
            "splices": [asdict(s) for s in sk.splices],
            "ptr_trace": sk.ptr_trace,
            "charge_histogram": hist,
            "cost": sk.cost(),
        }
    )


def cmd_spanner(args):
    _, primal, dual, anchor = _dual(args)
    lam = _lambda(args, primal, anchor)
    S = build_spanner(dual, lam, args.epsilon)
    _emit(
        {
            "lambda": lam,
            "edges": {e: S.tag_of(e) for e in sorted(S.edges)},
            "tag_costs": S.tag_costs(),
            "cost": S.cost,
            "regions": S.regions,
        }
    )


def cmd_cluster(args):
    _, primal, dual, anchor = _dual(args)
    lam = _lambda(args, primal, anchor)
    sk = build_skeleton(dual, lam, args.epsilon)
    regions = dict(sk.regions())
    if args.region not in regions:
        raise PlanarError("no skeleton cycle %d; ids are %s" % (args.region, sorted(regions)))
    D = build_double_cover(dual, regions[args.region])
    W = build_well_connected_cover(D, args.epsilon)
    res = W.clustering
    _emit(
        {
            "region": args.region,
            "phi": list(W.contracted.phi),
            "events": [[t, kind, x] for t, kind, x in res.events],
            "Z": sorted(W.Z),
            "components": [sorted(c) for c in W.components],
            "cost": W.cost,
        }
    )


def cmd_cycles(args):
    _, _, dual, _ = _dual(args)
    tab = min_cycle_exact_weight(dual, args.root)
    _emit({"root": args.root, "rows": [[w, c, list(cyc)] for w, (c, cyc) in sorted(tab.entries.items())]})


def cmd_verify(args):
    with open(args.input) as fh:
        inst = json.load(fh)
    rep = verify(inst, args.epsilon, args.b, args.lam, args.seed, args.walk_len)
    rep["all_passed"] = all_passed(rep)
    _emit(rep)
    return 0 if rep["all_passed"] else 1


def bench_rows(instances, b, eps, kmax=DEFAULT_KMAX):
    rows = []
    for name, g in instances:
        t0 = time.perf_counter()
        primal, anchor = with_outer_vertex(g)
        W = sum(primal.vertex_weights)
        lo, hi = target_window(W, b)
        opt = exact_bipartition_graph(primal, lo, hi, anchor).cost if primal.n <= ENUMERATION_LIMIT else None
        sol, rep = solve(g, b, eps, kmax=kmax)
        best = next(r for r in rep.lambdas if r["lambda"] == rep.best_lambda)
        rows.append(
            {
                "instance": name,
                "opt": opt,
                "cost": sol.cost,
                "ratio": (sol.cost / opt) if opt else None,
                "balance": sol.balance,
                "spanner_cost": best["spanner_cost"],
                "thinning_cost": best["thinning_cost"],
                "dp_cost": best["dp_cost"],
                "width": best["width"],
                "seconds": round(time.perf_counter() - t0, 3),
            }
        )
    return rows


def cmd_bench(args):
    instances = []
    for path in args.inputs:
        instances.append((path, read_instance(path)[0]))
    if not instances:
        for r, c in ((2, 3), (3, 3), (3, 4), (4, 4)):
            instances.append(("grid%dx%d" % (r, c), generate(GeneratorSpec("grid", {"rows": r, "cols": c}))))
    rows = bench_rows(instances, Fraction(args.b), Fraction(args.epsilon), args.kmax)
    _emit({"columns": list(rows[0]) if rows else [], "rows": rows})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarbisect", description="Planar b-bipartition toolkit")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("gen", help="generate an instance")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("--params", help="JSON object of size parameters")
    s.add_argument("--weights", default="unit")
    s.add_argument("--costs", default="unit")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_gen)

    def common(s, lam=False):
        s.add_argument("--input", "-i", required=True)
        s.add_argument("--b", default="1/2")
        s.add_argument("--epsilon", default="3/10")
        if lam:
            s.add_argument("--lambda", dest="lam")

    s = sub.add_parser("solve", help="run the approximation scheme")
    common(s, lam=True)
    s.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    s.add_argument("--state-limit", type=int, default=DEFAULT_STATE_LIMIT)
    s.add_argument("--stage", choices=("spanner", "thin", "dp", "all"), default="all")
    s.add_argument("--report")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("exact", help="brute-force optimum")
    common(s)
    s.add_argument("--lo", type=int)
    s.add_argument("--hi", type=int)
    s.set_defaults(func=cmd_exact)

    for name, fn in (("skeleton", cmd_skeleton), ("spanner", cmd_spanner)):
        s = sub.add_parser(name)
        common(s, lam=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("cluster", help="clustering on one holed skeleton region")
    common(s, lam=True)
    s.add_argument("--region", type=int, required=True, help="skeleton cycle id")
    s.set_defaults(func=cmd_cluster)

    s = sub.add_parser("cycles", help="cheapest cycle per enclosed weight")
    s.add_argument("what", nargs="?", choices=("table",), default="table")
    s.add_argument("--input", "-i", required=True)
    s.add_argument("--root", type=int, required=True, help="dual vertex (face id)")
    s.set_defaults(func=cmd_cycles)

    s = sub.add_parser("verify", help="run every invariant check")
    common(s, lam=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--walk-len", type=int, default=6)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", help="compare against the exact optimum")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--b", default="1/2")
    s.add_argument("--epsilon", default="1/5")
    s.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except PlanarError as exc:
        _emit({"error": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
