"""Greedy construction of a nested family of low-ratio cycles.

Cycles are added one at a time, each the most enclosing cycle of ratio at
most ``alpha = lam / eps`` that fits strictly inside some current region.
When nothing more can be added, a pointer walks the preorder of the region
tree from right to left and splices out intermediate ancestors whose weight
has not yet doubled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cycles import max_enclosing_low_ratio_cycle
from .oracles import ENUMERATION_LIMIT, simple_cycles
from .planar import EmbeddedGraph, PlanarError, RegionTree, enclosed_faces, outer_boundary, region_tree


class InvariantViolation(PlanarError):
    pass


@dataclass(frozen=True)
class Certificate:
    region_faces: frozenset
    region_weight: int
    cost: Fraction


@dataclass(frozen=True)
class Splice:
    rootward: int
    leafward: int
    removed: tuple


@dataclass
class Skeleton:
    graph: EmbeddedGraph
    alpha: Fraction
    cycles: dict  # id -> cycle, id 0 is the outer boundary
    tree: RegionTree
    ids: tuple  # tree node -> cycle id
    F: dict
    certificates: dict
    splices: list = field(default_factory=list)
    ptr_trace: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)  # (ptr id, suffix of ids)
    insertions: int = 0
    contexts: list = field(default_factory=list)  # per ptr event: (preorder ids, parent by id, weight by id)

    def node(self, cid: int) -> int:
        return self.ids.index(cid)

    def cycle_list(self) -> list:
        return [self.cycles[c] for c in self.ids]

    def cost(self) -> Fraction:
        edges = {d >> 1 for c in self.ids for d in self.cycles[c]}
        return sum((self.graph.costs[e] for e in edges), Fraction(0))

    def edges(self) -> set:
        return {d >> 1 for c in self.ids for d in self.cycles[c]}

    def regions(self):
        """``(cycle id, Region)`` for every final region in preorder."""
        return [(self.ids[v], self.tree.region(v)) for v in self.tree.preorder]


def _alpha(lam, eps):
    if eps is None or eps == math.inf:
        return Fraction(0)
    lam, eps = Fraction(lam), Fraction(eps)
    if lam < 0 or eps <= 0:
        raise PlanarError("need lambda >= 0 and epsilon > 0")
    return lam / eps


def build_skeleton(g: EmbeddedGraph, lam, eps, max_insertions: Optional[int] = None) -> Skeleton:
    """Run the skeleton algorithm on a dual graph with a designated outer face."""
    alpha = _alpha(lam, eps)
    cycles = {0: outer_boundary(g)}
    order = [0]
    F = {0: frozenset(range(g.num_faces)) - {g.outer_face}}
    certs = {}
    splices, trace, snaps, contexts = [], [], [], []
    ptr = None
    next_id = 1
    insertions = 0
    cap = max_insertions if max_insertions is not None else max(1, g.num_faces) ** 2
    cache: dict = {}

    def tree_now():
        return region_tree(g, [cycles[c] for c in order])

    while True:
        tree = tree_now()
        _check_snapshots(snaps, [order[v] for v in tree.preorder])
        found = None
        for v in tree.preorder:
            region = tree.region(v)
            key = (region.faces, region.outer, region.holes)
            if key not in cache:
                cache[key] = max_enclosing_low_ratio_cycle(g, region, alpha)
            if cache[key] is not None:
                found = (region, cache[key])
                break
        if found is not None:
            region, (cyc, cost, wr) = found
            insertions += 1
            if insertions > cap:
                raise InvariantViolation("more than %d insertions" % cap)
            cid = next_id
            next_id += 1
            cycles[cid] = cyc
            order.append(cid)
            F[cid] = region.faces & enclosed_faces(g, cyc)
            certs[cid] = Certificate(region.faces, wr, cost)
            continue
        pre = [order[v] for v in tree.preorder]
        if ptr is None:
            ptr = pre[-1]
        else:
            if ptr not in pre:
                raise InvariantViolation("pointer cycle %d was removed" % ptr)
            i = pre.index(ptr)
            ptr = pre[i - 1]
        trace.append(ptr)
        q = pre.index(ptr)
        snaps.append((ptr, tuple(pre[q:])))
        contexts.append(
            (
                tuple(pre),
                {order[v]: None if tree.parent[v] is None else order[tree.parent[v]] for v in tree.preorder},
                {order[v]: tree.weight[v] for v in tree.preorder},
            )
        )
        wq = tree.weight[order.index(ptr)]
        p = q
        for i in range(q + 1):
            if tree.is_ancestor(order.index(pre[i]), order.index(ptr)) and tree.weight[order.index(pre[i])] < 2 * wq:
                p = i
                break
        removed = tuple(pre[p + 1 : q])
        splices.append(Splice(pre[p], ptr, removed))
        if len(splices) > g.num_faces + 1:
            raise InvariantViolation("more splices than faces")
        for c in removed:
            order.remove(c)
        if ptr == 0:
            break

    tree = tree_now()
    _check_snapshots(snaps, [order[v] for v in tree.preorder])
    sk = Skeleton(
        g,
        alpha,
        {c: cycles[c] for c in order},
        tree,
        tuple(order),
        {c: F[c] for c in order},
        {c: certs[c] for c in order if c in certs},
        splices,
        trace,
        snaps,
        insertions,
        contexts,
    )
    check_skeleton(sk)
    return sk


def _check_snapshots(snaps, pre):
    for ptr, suffix in snaps:
        if ptr not in pre or tuple(pre[pre.index(ptr) :]) != suffix:
            raise InvariantViolation("preorder suffix from cycle %d changed" % ptr)


def charge_counts(sk: Skeleton) -> list[int]:
    """Per face, how many added cycles charged it at insertion time."""
    counts = [0] * sk.graph.num_faces
    for c in sk.ids:
        if c == 0:
            continue
        for f in sk.F[c]:
            counts[f] += 1
    return counts


def charge_bound(W: int) -> int:
    return 2 * math.ceil(math.log2(W)) + 2 if W > 1 else 2


def check_skeleton(sk: Skeleton) -> None:
    """Ratio certificates, the charge bound and the cost bound."""
    g = sk.graph
    for c, cert in sk.certificates.items():
        if cert.region_weight <= 0 or cert.cost > sk.alpha * cert.region_weight:
            raise InvariantViolation("cycle %d breaks its ratio certificate" % c)
        if g.walk_cost(sk.cycles[c]) != cert.cost:
            raise InvariantViolation("cycle %d cost drifted" % c)
    W = sum(g.face_weights)
    counts = charge_counts(sk)
    if counts and max(counts) > charge_bound(W):
        raise InvariantViolation("charge %d exceeds %d" % (max(counts), charge_bound(W)))
    weighted = sum(k * w for k, w in zip(counts, g.face_weights))
    cost = sk.cost()
    if cost > sk.alpha * weighted or cost > sk.alpha * W * charge_bound(W):
        raise InvariantViolation("skeleton cost %s exceeds its bound" % cost)


@dataclass
class RemainingReport:
    status: str  # pass | fail | skipped
    witness: Optional[tuple] = None
    reason: str = ""
    checked: int = 0


def verify_no_low_ratio_remaining(g: EmbeddedGraph, sk: Skeleton, limit: int = ENUMERATION_LIMIT) -> RemainingReport:
    """Every surviving low-ratio cycle strictly inside a final region encloses
    the heaviest hole and has ratio above ``alpha`` against the hole-free part.

    Strictly inside means all edges in the region and at least one edge off
    its boundary.
    """
    if g.m > limit:
        return RemainingReport("skipped", reason="%d edges exceed the enumeration bound" % g.m)
    alpha = sk.alpha
    w = g.face_weights
    in_skeleton = {frozenset(d >> 1 for d in c) for c in sk.cycles.values()}
    all_cycles = simple_cycles(g)
    checked = 0
    for v in sk.tree.preorder:
        region = sk.tree.region(v)
        edges = region.edges(g)
        internal = region.internal_edges(g)
        hole = sk.tree.heaviest_hole(v)
        outer_in = sk.tree.enclosed[v]
        for cyc in all_cycles:
            es = {d >> 1 for d in cyc}
            if not es <= edges or not es & internal or frozenset(es) in in_skeleton:
                continue
            inside = enclosed_faces(g, cyc)
            if not inside <= outer_in:
                continue
            wg = sum(w[f] for f in inside)
            cost = g.walk_cost(cyc)
            if wg == 0 or cost > alpha * wg:
                continue
            checked += 1
            if hole is None or not sk.tree.enclosed[hole] <= inside:
                return RemainingReport("fail", cyc, "low-ratio cycle misses the heaviest hole", checked)
            S = outer_in - sk.tree.enclosed[hole]
            ws = sum(w[f] for f in inside & S)
            if ws > 0 and cost <= alpha * ws:
                return RemainingReport("fail", cyc, "low ratio against the hole-free part", checked)
    return RemainingReport("pass", checked=checked)


def drop_cycle(sk: Skeleton, cid: int) -> Skeleton:
    """Copy of ``sk`` without one cycle, for negative tests."""
    if cid == 0:
        raise PlanarError("cannot drop the outer boundary")
    ids = tuple(c for c in sk.ids if c != cid)
    cycles = {c: sk.cycles[c] for c in ids}
    tree = region_tree(sk.graph, [cycles[c] for c in ids])
    return Skeleton(
        sk.graph,
        sk.alpha,
        cycles,
        tree,
        ids,
        {c: sk.F[c] for c in ids},
        {c: v for c, v in sk.certificates.items() if c in cycles},
        list(sk.splices),
        list(sk.ptr_trace),
        list(sk.snapshots),
        sk.insertions,
    )


def simulate_splices(parent: Sequence, weight: Sequence[int], ptr_order_pre: Sequence[int], ptr: int):
    """Reference splice on an abstract tree: returns ``(p, removed)``.

    ``ptr_order_pre`` is the preorder list of node ids and ``parent`` maps a
    node to its parent (``None`` at the root).
    """
    q = ptr_order_pre.index(ptr)
    anc = set()
    x = ptr
    while x is not None:
        anc.add(x)
        x = parent[x]
    for i in range(q + 1):
        a = ptr_order_pre[i]
        if a in anc and weight[a] < 2 * weight[ptr]:
            return a, tuple(ptr_order_pre[i + 1 : q])
    return ptr, ()
