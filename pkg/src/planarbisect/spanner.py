"""Spanners for the dual graph.

The assembled spanner is the union of five edge families, tagged by where
they come from: skeleton cycles, shortcuts inside hole-free regions, bought
cover edges, cover shortcuts, and the cheapest cycle around each region's
heaviest hole.

Shortcut spanners are built greedily: terminal pairs are taken in order of
their exact distance and a shortest path is added whenever the current
subgraph misses the ``1 + eps`` stretch for that pair.  The stretch bound
therefore holds by construction.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .clustering import build_well_connected_cover
from .cover import build_double_cover
from .cycles import cheapest_enclosing_cycle
from .oracles import ENUMERATION_LIMIT, exact_bipartition
from .planar import EmbeddedGraph, PlanarError, Region, contract_edges, crosses
from .skeleton import Skeleton, build_skeleton

TAGS = ("skeleton", "hole-free", "cover", "cover-shortcut", "enclosing-cycle")


def dijkstra(g: EmbeddedGraph, source: int, allowed: Optional[set] = None):
    """Distances and parent darts from ``source``; ties go to the smaller dart."""
    dist = {source: Fraction(0)}
    parent = {source: -1}
    heap = [(Fraction(0), -1, source)]
    done = set()
    while heap:
        dv, via, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        parent[v] = via
        for d in g.rotation[v]:
            if allowed is not None and (d >> 1) not in allowed:
                continue
            u = g.head[d]
            if u in done:
                continue
            nd = dv + g.costs[d >> 1]
            if u not in dist or nd <= dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, d, u))
    return dist, parent


def _path(g, parent, v):
    out = []
    while parent[v] != -1:
        out.append(parent[v])
        v = g.tail[parent[v]]
    return out[::-1]


def greedy_spanner(
    g: EmbeddedGraph, base: Iterable[int], terminals: Iterable[int], eps, allowed: Optional[set] = None
) -> frozenset:
    """Smallest-first greedy ``(1 + eps)``-spanner over terminal pairs, containing ``base``."""
    H = set(base)
    if eps == math.inf:
        return frozenset(H)
    stretch = 1 + Fraction(eps)
    terms = sorted(set(terminals))
    trees = {t: dijkstra(g, t, allowed) for t in terms}
    pairs = []
    for i, u in enumerate(terms):
        du = trees[u][0]
        for v in terms[i + 1 :]:
            if v in du:
                pairs.append((du[v], u, v))
    pairs.sort()
    for d, u, v in pairs:
        dh = dijkstra(g, u, H)[0].get(v)
        if dh is None or dh > stretch * d:
            H.update(x >> 1 for x in _path(g, trees[u][1], v))
    return frozenset(H)


def stretch_violations(g, H, terminals, eps, allowed=None) -> list:
    """Terminal pairs whose distance in ``H`` exceeds ``(1 + eps)`` times the exact one."""
    out = []
    terms = sorted(set(terminals))
    for u in terms:
        dg = dijkstra(g, u, allowed)[0]
        dh = dijkstra(g, u, set(H))[0]
        for v in terms:
            if v > u and v in dg:
                if v not in dh or (eps != math.inf and dh[v] > (1 + Fraction(eps)) * dg[v]):
                    out.append((u, v))
    return out


def boundary_spanner(g: EmbeddedGraph, region: Region, eps) -> frozenset:
    if region.holes:
        raise PlanarError("boundary spanner needs a hole-free region")
    C = {d >> 1 for d in region.outer}
    terminals = {g.tail[d] for d in region.outer}
    H = greedy_spanner(g, C, terminals, eps, allowed=region.edges(g))
    assert not stretch_violations(g, H, terminals, eps, region.edges(g))
    return H


def component_spanner(g: EmbeddedGraph, A: Iterable[int], eps, allowed: Optional[set] = None) -> frozenset:
    A = set(A)
    terminals = {v for e in A for v in g.ends[e]}
    H = greedy_spanner(g, A, terminals, eps, allowed)
    assert not stretch_violations(g, H, terminals, eps, allowed)
    return H


@dataclass
class SpannerEdges:
    graph: EmbeddedGraph
    skeleton: Skeleton
    tag_edges: dict  # tag -> frozenset of edges contributed (may overlap)
    regions: list = field(default_factory=list)  # per-region records
    eps: Fraction = Fraction(0)
    lam: Fraction = Fraction(0)

    @property
    def edges(self) -> frozenset:
        out = set()
        for t in TAGS:
            out |= self.tag_edges.get(t, frozenset())
        return frozenset(out)

    def tag_of(self, e: int) -> Optional[str]:
        for t in TAGS:
            if e in self.tag_edges.get(t, ()):
                return t
        return None

    def tag_costs(self) -> dict:
        """Cost of the edges first introduced by each tag."""
        out = {t: Fraction(0) for t in TAGS}
        for e in self.edges:
            out[self.tag_of(e)] += self.graph.costs[e]
        return out

    @property
    def cost(self) -> Fraction:
        return sum((self.graph.costs[e] for e in self.edges), Fraction(0))

    def without(self, tag: str) -> frozenset:
        out = set()
        for t in TAGS:
            if t != tag:
                out |= self.tag_edges.get(t, frozenset())
        return frozenset(out)


def build_spanner(g: EmbeddedGraph, lam, eps, skeleton: Optional[Skeleton] = None) -> SpannerEdges:
    eps = Fraction(eps)
    sk = build_skeleton(g, lam, eps) if skeleton is None else skeleton
    tags = {t: set() for t in TAGS}
    tags["skeleton"] = set(sk.edges())
    records = []
    for cid, R in sk.regions():
        rec = {"cycle": cid, "faces": len(R.faces), "holes": len(R.holes)}
        if not R.holes:
            H = boundary_spanner(g, R, eps)
            tags["hole-free"] |= H
            rec["shortcut_cost"] = _cost(g, H)
        else:
            D = build_double_cover(g, R)
            W = build_well_connected_cover(D, eps)
            Zp = {D.project_edge(e) for e in W.Z}
            tags["cover"] |= Zp
            sc = set()
            for A in W.components:
                H2 = component_spanner(D.cover, A, eps)
                sc |= {D.project_edge(e) for e in H2}
            tags["cover-shortcut"] |= sc
            hole = sk.tree.heaviest_hole(sk.node(cid))
            cyc, cost = cheapest_enclosing_cycle(g, R, sk.tree.cycles[hole])
            tags["enclosing-cycle"] |= {d >> 1 for d in cyc}
            rec.update(
                cover_cost=_cost(g, Zp),
                potential=W.clustering.budget,
                components=len(W.components),
                shortcut_cost=_cost(g, sc),
                enclosing_cost=cost,
            )
        records.append(rec)
    return SpannerEdges(g, sk, {t: frozenset(s) for t, s in tags.items()}, records, eps, Fraction(lam))


def _cost(g, edges):
    return sum((g.costs[e] for e in edges), Fraction(0))


# -- containment -----------------------------------------------------------------


@dataclass
class ContainmentReport:
    status: str  # pass | fail | skipped
    opt: Optional[Fraction] = None
    cost: Optional[Fraction] = None
    balance: Optional[Fraction] = None
    window: tuple = ()
    witness: Optional[frozenset] = None
    reason: str = ""


def target_window(W: int, b) -> tuple[int, int]:
    """Integer weights closest to ``b * W``."""
    t = Fraction(b) * W
    return math.floor(t), math.ceil(t)


def restricted_best(primal: EmbeddedGraph, anchor, kept_edges, lo, hi):
    """Best bipartition of ``primal`` cutting only ``kept_edges`` (by enumeration)."""
    drop = [e for e in range(primal.m) if e not in kept_edges]
    weights, new_edges, prov, _ = contract_edges(primal, drop)
    n = len(weights)
    ends = [(a, b) for a, b, _, _ in new_edges]
    costs = [c for _, _, c, _ in new_edges]
    anchor_c = None
    if anchor is not None:
        anchor_c = next(i for i, group in enumerate(prov) if anchor in group)
    sol = exact_bipartition(n, ends, costs, weights, lo, hi, anchor_c)
    U = frozenset(v for i in sol.side_u for v in prov[i])
    return sol, U


def verify_containment(primal: EmbeddedGraph, anchor, sp_edges, b, eps) -> ContainmentReport:
    """Compare the best spanner-restricted solution against the exact optimum."""
    if primal.n > ENUMERATION_LIMIT:
        return ContainmentReport("skipped", reason="%d vertices exceed the enumeration bound" % primal.n)
    eps = Fraction(eps)
    W = sum(primal.vertex_weights)
    lo, hi = target_window(W, b)
    opt = exact_bipartition(primal.n, primal.ends, primal.costs, primal.vertex_weights, lo, hi, anchor)
    blo = max(Fraction(0), Fraction(b) - 6 * eps)
    bhi = min(Fraction(1), Fraction(b) + 6 * eps)
    wlo, whi = math.ceil(blo * W), math.floor(bhi * W)
    try:
        sol, U = restricted_best(primal, anchor, set(sp_edges), wlo, whi)
    except PlanarError as exc:
        return ContainmentReport("fail", opt.cost, window=(wlo, whi), reason=str(exc))
    bal = Fraction(sol.weight_u, W) if W else Fraction(0)
    ok = sol.cost <= (1 + 4 * eps) * opt.cost
    return ContainmentReport("pass" if ok else "fail", opt.cost, sol.cost, bal, (wlo, whi), U)


# -- path decomposition ----------------------------------------------------------


def decompose_cycle(g: EmbeddedGraph, K: Sequence[int], skeleton_cycles: Sequence[Sequence[int]]) -> list:
    """Split closed walk ``K`` into the fewest paths that cross no skeleton cycle.

    Paths start and end at vertices of skeleton cycles that ``K`` crosses.
    Returns ``[K]`` when ``K`` crosses none of them.
    """
    K = list(K)
    crossed = [C for C in skeleton_cycles if crosses(g, K, C)]
    if not crossed:
        return [tuple(K)]
    on = set()
    for C in crossed:
        on |= {g.tail[d] for d in C}
    splits = [i for i in range(len(K)) if g.tail[K[i]] in on]
    best = None
    L = len(K)
    for s in splits:
        pieces = []
        start = s
        while start < s + L:
            end = None
            for j in range(start + 1, s + L + 1):
                if g.tail[K[j % L]] not in on:
                    continue
                path = [K[i % L] for i in range(start, j)]
                if any(crosses(g, path, C) for C in crossed):
                    break
                end = j
            if end is None:
                end = next(j for j in range(start + 1, s + L + 1) if g.tail[K[j % L]] in on)
            pieces.append(tuple(K[i % L] for i in range(start, end)))
            start = end
        if best is None or len(pieces) < len(best):
            best = pieces
    return best
