"""Exhaustive reference computations used to check the fast paths."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .planar import EmbeddedGraph, PlanarError, canonical_cycle, odd_edges

ENUMERATION_LIMIT = 24


def flood_fill_enclosed(g: EmbeddedGraph, darts: Iterable[int]) -> frozenset:
    """Faces not reachable from the outer face without crossing an odd edge."""
    odd = odd_edges(darts)
    reach = {g.outer_face}
    queue = deque([g.outer_face])
    while queue:
        f = queue.popleft()
        for d in g.faces[f]:
            if (d >> 1) in odd:
                continue
            h = g.face_of[d ^ 1]
            if h not in reach:
                reach.add(h)
                queue.append(h)
    return frozenset(range(g.num_faces)) - reach


def simple_cycles(g: EmbeddedGraph, allowed_edges: Optional[set] = None, max_len: Optional[int] = None):
    """All simple cycles, each once, in positive orientation.

    Orientation is fixed so that the enclosed faces lie on the face side of
    the darts.
    """
    out = set()
    for s in range(g.n):
        stack = [(s, (), 1 << s)]
        while stack:
            v, path, seen = stack.pop()
            if max_len is not None and len(path) >= max_len:
                continue
            used = {d >> 1 for d in path}
            for d in g.rotation[v]:
                e = d >> 1
                if e in used or (allowed_edges is not None and e not in allowed_edges):
                    continue
                u = g.head[d]
                if u == s:
                    cyc = path + (d,)
                    inside = flood_fill_enclosed(g, cyc)
                    if g.face_of[cyc[0]] in inside:
                        out.add(canonical_cycle(cyc))
                elif u > s and not (seen >> u & 1):
                    stack.append((u, path + (d,), seen | 1 << u))
    return sorted(out)


def cycles_through(g: EmbeddedGraph, r: int, cycles=None):
    cycles = simple_cycles(g) if cycles is None else cycles
    return [c for c in cycles if any(g.tail[d] == r for d in c)]


def brute_weight_table(g: EmbeddedGraph, r: int, weights: Optional[Sequence[int]] = None, cycles=None) -> dict:
    """weight -> min cost over simple cycles through ``r``."""
    w = g.face_weights if weights is None else weights
    table: dict = {}
    for c in cycles_through(g, r, cycles):
        key = sum(w[f] for f in flood_fill_enclosed(g, c))
        cost = g.walk_cost(c)
        if key not in table or cost < table[key]:
            table[key] = cost
    return table


@dataclass
class BipartitionSolution:
    side_u: frozenset
    cost: Fraction
    weight_u: int
    total_weight: int

    @property
    def balance(self) -> Fraction:
        return Fraction(self.weight_u, self.total_weight) if self.total_weight else Fraction(0)


def cut_cost(ends: Sequence[tuple[int, int]], costs: Sequence, side_u) -> Fraction:
    U = set(side_u)
    return sum((Fraction(c) for (a, b), c in zip(ends, costs) if (a in U) != (b in U)), Fraction(0))


def exact_bipartition(
    n: int,
    ends: Sequence[tuple[int, int]],
    costs: Sequence,
    weights: Sequence[int],
    lo: int,
    hi: int,
    anchor: Optional[int] = None,
) -> BipartitionSolution:
    """Minimum-cost bipartition with ``lo <= w(U) <= hi`` by enumeration.

    ``anchor`` (the outer vertex) is kept out of ``U``.  Ties go to the
    lexicographically smallest sorted ``U``.
    """
    free, masks, cut, wt, scale = _enumerate(n, ends, costs, weights, anchor)
    ok = (wt >= lo) & (wt <= hi)
    if not ok.any():
        raise PlanarError("infeasible window [%s, %s]" % (lo, hi))
    best = cut[ok].min()
    cands = masks[ok & (cut == best)]
    sides = sorted(sorted(free[i] for i in range(len(free)) if int(m) >> i & 1) for m in cands)
    U = sides[0]
    return BipartitionSolution(frozenset(U), Fraction(int(best), scale), sum(weights[v] for v in U), sum(weights))


def _enumerate(n, ends, costs, weights, anchor):
    """Cut cost (scaled to integers) and weight of every side not holding ``anchor``."""
    if n > ENUMERATION_LIMIT:
        raise PlanarError("enumeration bound exceeded (%d vertices)" % n)
    free = [v for v in range(n) if v != anchor]
    pos = {v: i for i, v in enumerate(free)}
    fc = [Fraction(c) for c in costs]
    scale = 1
    for c in fc:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    masks = np.arange(1 << len(free), dtype=np.int64)
    cut = np.zeros(len(masks), dtype=np.int64)
    wt = np.zeros(len(masks), dtype=np.int64)

    def bit(v):
        if v not in pos:
            return np.zeros(len(masks), dtype=np.int64)
        return (masks >> pos[v]) & 1

    for (a, b), c in zip(ends, fc):
        if a != b and c:
            cut += int(c * scale) * (bit(a) ^ bit(b))
    for v in free:
        if weights[v]:
            wt += int(weights[v]) * bit(v)
    return free, masks, cut, wt, scale


def exact_weight_profile(n, ends, costs, weights, anchor=None) -> dict:
    """Minimum cut cost for every achievable weight of the U side."""
    _, _, cut, wt, scale = _enumerate(n, ends, costs, weights, anchor)
    top = int(wt.max()) if len(wt) else 0
    best = np.full(top + 1, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(best, wt, cut)
    return {w: Fraction(int(c), scale) for w, c in enumerate(best) if c != np.iinfo(np.int64).max}


def window_minimum(profile: dict, lo, hi):
    vals = [c for w, c in profile.items() if lo <= w <= hi]
    return min(vals) if vals else None


def exact_bipartition_graph(g: EmbeddedGraph, lo: int, hi: int, anchor: Optional[int] = None) -> BipartitionSolution:
    return exact_bipartition(g.n, g.ends, g.costs, g.vertex_weights, lo, hi, anchor)


def all_pairs_distances(n: int, arcs: Iterable[tuple[int, int, Fraction]]) -> list[list]:
    """Floyd-Warshall over undirected weighted arcs; ``None`` means unreachable."""
    dist = [[None] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = Fraction(0)
    for a, b, c in arcs:
        for x, y in ((a, b), (b, a)):
            if dist[x][y] is None or c < dist[x][y]:
                dist[x][y] = Fraction(c)
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(n):
                if dk[j] is not None and (di[j] is None or dik + dk[j] < di[j]):
                    di[j] = dik + dk[j]
    return dist


def subsets(items: Sequence, max_size: Optional[int] = None):
    top = len(items) if max_size is None else max_size
    for k in range(top + 1):
        yield from itertools.combinations(items, k)
