"""Run every module's checks on one instance and collect a pass/fail report."""

from __future__ import annotations

import random
from fractions import Fraction

from .clustering import build_well_connected_cover, exists_exception_set
from .cover import build_double_cover, encloses_largest_hole, project_closed_walk
from .cycles import min_cycle_exact_weight
from .framework import solve
from .oracles import ENUMERATION_LIMIT, brute_weight_table, exact_bipartition, simple_cycles
from .planar import EmbeddedGraph, PlanarError, from_instance, primal_and_dual
from .skeleton import InvariantViolation, build_skeleton, charge_bound, charge_counts, verify_no_low_ratio_remaining
from .spanner import build_spanner, stretch_violations, target_window, verify_containment

PASS, FAIL, NA, SKIPPED = "pass", "fail", "n/a", "skipped"


def closed_walks(g: EmbeddedGraph, max_len: int):
    """Every closed walk of length ``1..max_len`` as a dart tuple, per start vertex."""
    for s in range(g.n):
        stack = [(s, ())]
        while stack:
            v, w = stack.pop()
            if w and v == s:
                yield w
            if len(w) < max_len:
                for d in g.rotation[v]:
                    stack.append((g.head[d], w + (d,)))


def _entry(status, **info):
    out = {"status": status}
    out.update({k: (str(v) if isinstance(v, Fraction) else v) for k, v in info.items()})
    return out


def verify(g_or_instance, eps, b, lam=None, seed: int = 0, walk_len: int = 6) -> dict:
    """Checks keyed by property name; failures are report content, not exceptions."""
    report: dict = {}
    eps, b = Fraction(eps), Fraction(b)
    try:
        if isinstance(g_or_instance, dict):
            g, outer = from_instance(g_or_instance)
        else:
            g, outer = g_or_instance, None
        primal, dual, anchor = primal_and_dual(g, outer)
    except PlanarError as exc:
        report["ingestion"] = _entry(FAIL, error=str(exc))
        return report
    report["ingestion"] = _entry(PASS, vertices=g.n, edges=g.m, faces=g.num_faces)
    W = sum(primal.vertex_weights)
    if lam is None:
        if primal.n <= ENUMERATION_LIMIT and W > 0:
            lo, hi = target_window(W, b)
            opt = exact_bipartition(primal.n, primal.ends, primal.costs, primal.vertex_weights, lo, hi, anchor).cost
            lam = opt / W
        else:
            lam = Fraction(1)
    lam = Fraction(lam)
    report["lambda"] = str(lam)

    # cycle table
    if dual.num_faces <= 9:
        bad = []
        cyc = simple_cycles(dual)
        for r in range(dual.n):
            tab = min_cycle_exact_weight(dual, r)
            ref = brute_weight_table(dual, r, cycles=cyc)
            if {w: c for w, (c, _) in tab.entries.items()} != ref:
                bad.append(r)
        report["weight-cycle-table"] = _entry(FAIL if bad else PASS, bad_roots=bad)
    else:
        report["weight-cycle-table"] = _entry(SKIPPED, reason="more than 9 faces")

    # skeleton
    try:
        sk = build_skeleton(dual, lam, eps)
    except InvariantViolation as exc:
        report["skeleton"] = _entry(FAIL, error=str(exc))
        return report
    counts = charge_counts(sk)
    Wd = sum(dual.face_weights)
    report["skeleton"] = _entry(
        PASS,
        cycles=len(sk.ids),
        splices=len(sk.splices),
        insertions=sk.insertions,
        max_charge=max(counts) if counts else 0,
        charge_bound=charge_bound(Wd) if Wd else 0,
        cost=sk.cost(),
    )
    report["fixed-suffix"] = _entry(PASS, snapshots=len(sk.snapshots))
    rem = verify_no_low_ratio_remaining(dual, sk)
    report["no-low-ratio-remaining"] = _entry(rem.status, checked=rem.checked, reason=rem.reason, witness=rem.witness)

    # cover and clustering on every holed region
    holed = [(cid, R) for cid, R in sk.regions() if R.holes]
    if not holed:
        report["double-cover"] = _entry(NA)
        report["pc-clustering"] = _entry(NA)
    else:
        cover_bad, walks, clus_bad, trials = [], 0, [], 0
        rng = random.Random(seed)
        for cid, R in holed:
            D = build_double_cover(dual, R)
            for w in closed_walks(D.cover, walk_len):
                walks += 1
                if encloses_largest_hole(D, project_closed_walk(D, w)):
                    cover_bad.append((cid, w))
                    break
            WC = build_well_connected_cover(D, eps)
            P, Z = WC.contracted, WC.clustering.Z
            if P.n <= 12:
                for _ in range(10):
                    H = [e for e in range(len(P.edges)) if rng.random() < 0.4]
                    trials += 1
                    if exists_exception_set(P, Z, H) is None:
                        clus_bad.append((cid, H))
        report["double-cover"] = _entry(FAIL if cover_bad else PASS, walks=walks, witness=cover_bad[:1])
        report["pc-clustering"] = _entry(FAIL if clus_bad else PASS, trials=trials, witness=clus_bad[:1])

    # spanner
    S = build_spanner(dual, lam, eps, skeleton=sk)
    report["spanner"] = _entry(PASS, cost=S.cost, tags={k: str(v) for k, v in S.tag_costs().items()})
    viol = []
    for cid, R in sk.regions():
        if not R.holes:
            H = S.tag_edges["hole-free"] | {d >> 1 for d in R.outer}
            terms = {dual.tail[d] for d in R.outer}
            v = stretch_violations(dual, H & R.edges(dual), terms, eps, R.edges(dual))
            if v:
                viol.append((cid, v[:1]))
    report["distance-contract"] = _entry(FAIL if viol else PASS, witness=viol[:1])
    report["enclosing-cycle"] = _entry(PASS if holed else NA, cycles=len(holed))
    cont = verify_containment(primal, anchor, S.edges, b, eps)
    report["containment"] = _entry(cont.status, opt=cont.opt, cost=cont.cost, balance=cont.balance, reason=cont.reason)

    # end to end
    try:
        sol, rep = solve(g, b, eps, outer=outer)
        report["solve"] = _entry(PASS, cost=sol.cost, balance=sol.balance, window=[str(x) for x in rep.aggregate_window])
    except PlanarError as exc:
        report["solve"] = _entry(FAIL, error=str(exc))
    return report


def all_passed(report: dict) -> bool:
    return all(v.get("status") != FAIL for v in report.values() if isinstance(v, dict))
