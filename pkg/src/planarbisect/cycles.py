"""Weight-exact cycle search in a face-weighted embedded graph.

Enclosed weight is made path-additive with dart labels taken from a spanning
tree of the face-adjacency graph rooted at the outer face: a tree edge gets
plus or minus the weight hanging below it, every other edge gets zero.  For a
simple cycle the label sum equals the enclosed weight, signed by orientation.

Searching for the cheapest simple cycle through a root with a given enclosed
weight runs in two stages.  A layered Dijkstra over (vertex, label sum) gives
the cheapest *walk* back to the root for each residual sum; that table is an
admissible bound for a best-first search over simple paths, which is exact.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import networkx as nx

from .planar import EmbeddedGraph, PlanarError, Region, canonical_cycle, enclosed_faces, rev, trace_boundary

INF = math.inf


def dart_weight_labels(g: EmbeddedGraph, weights: Optional[Sequence[int]] = None) -> list[int]:
    """Signed labels with ``sum(labels over C) == ±enclosed weight`` for cycles C."""
    w = g.face_weights if weights is None else weights
    if g.outer_face is None:
        raise PlanarError("labels need a designated outer face")
    parent_edge = [-1] * g.num_faces
    order = [g.outer_face]
    seen = {g.outer_face}
    queue = deque([g.outer_face])
    adj = g.face_adjacency()
    while queue:
        f = queue.popleft()
        for e, h in sorted(adj[f]):
            if h not in seen:
                seen.add(h)
                parent_edge[h] = e
                order.append(h)
                queue.append(h)
    sub = list(w)
    for f in reversed(order[1:]):
        e = parent_edge[f]
        a, b = g.edge_faces(e)
        p = b if a == f else a
        sub[p] += sub[f]
    labels = [0] * (2 * g.m)
    for f in order[1:]:
        e = parent_edge[f]
        for d in (2 * e, 2 * e + 1):
            labels[d] = sub[f] if g.face_of[d] == f else -sub[f]
    return labels


def perturb_weights(g: EmbeddedGraph, weights: Optional[Sequence[int]] = None) -> list[int]:
    """``w'(f) = w(f) * F + 1`` with ``F`` the number of faces."""
    w = g.face_weights if weights is None else weights
    F = g.num_faces
    return [x * F + 1 for x in w]


def integer_costs(g: EmbeddedGraph) -> tuple[list[int], int]:
    """Edge costs scaled by the lcm of their denominators."""
    scale = 1
    for c in g.costs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return [int(c * scale) for c in g.costs], scale


def shortest_path_tree(g: EmbeddedGraph, root: int, allowed_edges: Optional[set] = None) -> list[int]:
    """Parent dart per vertex (-1 for root/unreached); ties broken by dart id."""
    icost, _ = integer_costs(g)
    dist = {root: 0}
    parent = [-1] * g.n
    heap = [(0, -1, root)]
    done = set()
    while heap:
        dv, via, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        parent[v] = via
        for d in g.rotation[v]:
            if allowed_edges is not None and (d >> 1) not in allowed_edges:
                continue
            u = g.head[d]
            nd = dv + icost[d >> 1]
            if u not in done and (u not in dist or nd < dist[u] or (nd == dist[u])):
                if u not in dist or nd < dist[u]:
                    dist[u] = nd
                heapq.heappush(heap, (nd, d, u))
    return parent


def tree_path(g: EmbeddedGraph, parent: Sequence[int], v: int) -> list[int]:
    path = []
    while parent[v] != -1:
        d = parent[v]
        path.append(d)
        v = g.tail[d]
    return list(reversed(path))


def discovered_from_inside(g: EmbeddedGraph, cycle: Sequence[int], parent: Sequence[int]) -> bool:
    """Every tree path to a cycle vertex lies in the closed disk bounded by ``cycle``."""
    inside = enclosed_faces(g, cycle)
    on_cycle = {d >> 1 for d in cycle}
    for d in cycle:
        for t in tree_path(g, parent, g.tail[d]):
            e = t >> 1
            a, b = g.edge_faces(e)
            if e not in on_cycle and not (a in inside and b in inside):
                return False
    return True


class _Search:
    """Shared machinery for root-anchored simple-cycle search."""

    def __init__(self, g, labels, allowed_edges=None, internal_edges=None):
        self.g = g
        self.labels = labels
        self.icost, self.scale = integer_costs(g)
        self.allowed = allowed_edges
        self.internal = internal_edges
        self.bound = sum(abs(labels[2 * e]) for e in range(g.m) if allowed_edges is None or e in allowed_edges)
        self._bounds: dict = {}

    def usable(self, d):
        return self.allowed is None or (d >> 1) in self.allowed

    def walk_bounds(self, root: int, min_vertex: int = -1) -> dict:
        """Cheapest walk cost from each (vertex, sum) back to ``root``."""
        g, B = self.g, self.bound
        dist: dict = {(root, 0): 0}
        heap = [(0, root, 0)]
        while heap:
            c, u, s = heapq.heappop(heap)
            if dist.get((u, s), INF) < c:
                continue
            for out in g.rotation[u]:
                d = rev(out)  # enters u
                if not self.usable(d):
                    continue
                v = g.tail[d]
                if v < min_vertex:
                    continue
                ns = s + self.labels[d]
                if -B <= ns <= B:
                    nc = c + self.icost[d >> 1]
                    if nc < dist.get((v, ns), INF):
                        dist[(v, ns)] = nc
                        heapq.heappush(heap, (nc, v, ns))
        return dist

    def cached_bounds(self, r: int, restrict_min: bool = False) -> dict:
        key = (r, restrict_min)
        if key not in self._bounds:
            self._bounds[key] = self.walk_bounds(r, r if restrict_min else -1)
        return self._bounds[key]

    def lower_bound(self, roots, target, restrict_min=False):
        """Cheapest closed walk with label sum ``target`` through any root."""
        return min((self.cached_bounds(r, restrict_min).get((r, target), INF) for r in roots), default=INF)

    def enumerate(self, roots, target, budget=None, count_labels=None, stop_first=False, restrict_min=False):
        """Yield ``(cost, cycle, count_sum)`` for simple cycles with label sum ``target``.

        Cycles come out in nondecreasing cost.  With ``restrict_min`` every
        cycle is reported once, from its smallest vertex.
        """
        g = self.g
        bounds = {}
        heap = []
        tick = 0
        for r in roots:
            h = self.cached_bounds(r, restrict_min)
            bounds[r] = h
            if (r, target) in h:
                heap.append((h[(r, target)], tick, 0, r, r, 0, 0, (), 1 << r, False))
                tick += 1
        heapq.heapify(heap)
        while heap:
            pri, _, cost, r, v, s, k, path, seen, internal = heapq.heappop(heap)
            if budget is not None and pri > budget:
                return
            if v == r and path:
                yield cost, path, k
                if stop_first:
                    return
                continue
            h = bounds[r]
            used = {d >> 1 for d in path}
            for d in g.rotation[v]:
                if not self.usable(d) or (d >> 1) in used:
                    continue
                u = g.head[d]
                ns = s + self.labels[d]
                nc = cost + self.icost[d >> 1]
                nk = k + (count_labels[d] if count_labels is not None else 0)
                ni = internal or (self.internal is not None and (d >> 1) in self.internal)
                if u == r:
                    if ns == target:
                        heapq.heappush(heap, (nc, tick, nc, r, r, ns, nk, path + (d,), seen, ni))
                        tick += 1
                    continue
                if seen >> u & 1 or (restrict_min and u < r):
                    continue
                rest = h.get((u, target - ns))
                if rest is None:
                    continue
                heapq.heappush(heap, (nc + rest, tick, nc, r, u, ns, nk, path + (d,), seen | 1 << u, ni))
                tick += 1


@dataclass
class WeightCycleTable:
    root: int
    tree: list
    entries: dict = field(default_factory=dict)  # weight -> (cost, cycle)

    def keys(self):
        return sorted(self.entries)


def min_cycle_exact_weight(
    g: EmbeddedGraph,
    r: int,
    weights: Optional[Sequence[int]] = None,
    max_weight: Optional[int] = None,
) -> WeightCycleTable:
    """Cheapest simple cycle through ``r`` for every achievable enclosed weight.

    Cycles are reported with positive orientation (enclosed faces on the face
    side of their darts); ties go to the lexicographically smallest dart
    sequence starting at ``r``.
    """
    w = g.face_weights if weights is None else list(weights)
    labels = dart_weight_labels(g, w)
    search = _Search(g, labels)
    table = WeightCycleTable(root=r, tree=shortest_path_tree(g, r))
    top = sum(w) if max_weight is None else max_weight
    for target in range(0, top + 1):
        best = None
        for cost, cyc, _ in search.enumerate([r], target):
            if best is not None and cost > best[0]:
                break
            if target == 0 and enclosed_faces(g, cyc) and not _positive(g, cyc):
                continue
            if best is None or cyc < best[1]:
                best = (cost, cyc)
        if best is not None:
            table.entries[target] = (Fraction(best[0], search.scale), best[1])
    return table


def _positive(g: EmbeddedGraph, cyc: Sequence[int]) -> bool:
    inside = enclosed_faces(g, cyc)
    return g.face_of[cyc[0]] in inside


# -- regions ----------------------------------------------------------------


def region_weights(g: EmbeddedGraph, region: Region, weights: Optional[Sequence[int]] = None) -> list[int]:
    w = g.face_weights if weights is None else weights
    return [w[f] if f in region.faces else 0 for f in range(g.num_faces)]


def max_enclosing_low_ratio_cycle(
    g: EmbeddedGraph, region: Region, alpha, weights: Optional[Sequence[int]] = None
) -> Optional[tuple]:
    """Cycle strictly contained in ``region`` with ratio at most ``alpha`` that
    encloses the most region weight, then the most region faces.

    Returns ``(cycle, cost, region_weight)`` or ``None``.  ``alpha`` may be
    ``math.inf``.
    """
    wr = region_weights(g, region, weights)
    total = sum(wr)
    if total == 0:
        return None
    edges = region.edges(g)
    internal = region.internal_edges(g)
    if not internal:
        return None
    labels = dart_weight_labels(g, wr)
    counts = dart_weight_labels(g, [1 if f in region.faces else 0 for f in range(g.num_faces)])
    search = _Search(g, labels, allowed_edges=edges, internal_edges=internal)
    roots = sorted(region.vertices(g))
    infinite = alpha == INF or alpha is None
    for target in range(total, 0, -1):
        budget = None if infinite else math.floor(Fraction(alpha) * target * search.scale)
        if search.lower_bound(roots, target, True) > (INF if budget is None else budget):
            continue
        best = None
        for cost, cyc, k in search.enumerate(roots, target, budget=budget, count_labels=counts, restrict_min=True):
            if not _strict(cyc, internal):
                continue
            key = (-k, cost, canonical_cycle(cyc))
            if best is None or key < best:
                best = key
        if best is not None:
            return best[2], Fraction(best[1], search.scale), target
    return None


def _strict(cyc, internal) -> bool:
    return any((d >> 1) in internal for d in cyc)


# -- cheapest hole-enclosing cycle via minimum s,t-cuts ------------------------


def cheapest_enclosing_cycle(g: EmbeddedGraph, region: Region, hole: Sequence[int]) -> tuple:
    """Cheapest cycle inside ``region`` enclosing ``hole``, other than the outer boundary.

    Builds the dual network of the region: one node per region face, one
    node per hole interior, and one node for everything outside the outer
    boundary.  Each minimum cut separating ``hole`` from the outside is a
    cycle; forbidding each outer-boundary edge in turn rules out the outer
    boundary itself.
    """
    inside_hole = enclosed_faces(g, hole)
    outside = set(range(g.num_faces)) - enclosed_faces(g, region.outer)
    node = {}
    for f in range(g.num_faces):
        if f in region.faces:
            node[f] = ("f", f)
        elif f in inside_hole:
            node[f] = "s"
        elif f in outside:
            node[f] = "t"
        else:
            for h in region.holes:
                if f in enclosed_faces(g, h):
                    node[f] = ("h", canonical_cycle(h))
                    break
            else:
                node[f] = ("x", f)
    icost, scale = integer_costs(g)
    edges = sorted(region.edges(g))
    outer_edges = sorted({d >> 1 for d in region.outer})
    outer_key = frozenset(region.outer)

    def solve(forbidden):
        net = nx.DiGraph()
        net.add_node("s")
        net.add_node("t")
        for e in edges:
            a, b = node[g.face_of[2 * e]], node[g.face_of[2 * e + 1]]
            if a == b:
                continue
            for x, y in ((a, b), (b, a)):
                if net.has_edge(x, y):
                    if "capacity" in net[x][y] and e != forbidden:
                        net[x][y]["capacity"] += icost[e]
                    elif e == forbidden:
                        del net[x][y]["capacity"]
                elif e == forbidden:
                    net.add_edge(x, y)
                else:
                    net.add_edge(x, y, capacity=icost[e])
        try:
            value, (S, _) = nx.minimum_cut(net, "s", "t")
        except nx.NetworkXUnbounded:
            return None
        # fill pockets: keep the complement of t's side connected
        T = _component(net, "t", set(net.nodes) - set(S))
        S_faces = {f for f in range(g.num_faces) if node[f] not in T}
        darts = [d for d in g.darts() if g.face_of[d] in S_faces and g.face_of[rev(d)] not in S_faces]
        walks = trace_boundary(g, darts)
        if len(walks) != 1:
            return None
        cyc = walks[0]
        return sum(icost[d >> 1] for d in cyc), cyc

    candidates = []
    for forbidden in [None] + outer_edges:
        res = solve(forbidden)
        if res is not None and frozenset(res[1]) != outer_key:
            candidates.append(res)
    if not candidates:
        raise PlanarError("no interior enclosing cycle")
    cost, cyc = min(candidates)
    return cyc, Fraction(cost, scale)


def _component(net, start, allowed):
    seen = {start}
    stack = [start]
    und = net.to_undirected(as_view=True)
    while stack:
        x = stack.pop()
        for y in und[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen
