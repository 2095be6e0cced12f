"""Prize-collecting clustering by moat growing, and well-connected cover graphs.

Each vertex starts as its own cluster with a budget equal to its potential.
Active clusters grow their moats at unit rate and spend budget at the same
rate; an edge is bought once the moats on its two sides cover its cost, and
the two clusters merge and pool what is left.  A cluster whose budget runs
out stops growing.  At the end, clusters that went dead and hang off the rest
of the forest by a single bought edge lose that edge, repeatedly.  All event
times are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cover import DoubleCover
from .planar import PlanarError


@dataclass(frozen=True)
class PotentialGraph:
    n: int
    edges: tuple  # (u, v) pairs
    costs: tuple  # Fractions
    phi: tuple  # Fractions

    def __post_init__(self):
        if len(self.edges) != len(self.costs) or len(self.phi) != self.n:
            raise PlanarError("inconsistent potential graph")
        if any(c < 0 for c in self.costs) or any(p < 0 for p in self.phi):
            raise PlanarError("costs and potentials must be nonnegative")

    @classmethod
    def make(cls, n, edges, costs, phi):
        return cls(n, tuple(tuple(e) for e in edges), tuple(Fraction(c) for c in costs), tuple(Fraction(p) for p in phi))


@dataclass
class ClusteringResult:
    Z: frozenset  # bought edges that survive pruning
    bought: tuple  # every bought edge, in purchase order
    events: list  # (time, kind, detail)
    duals: dict  # cluster id -> grown amount
    cost: Fraction
    budget: Fraction

    def components(self, n: int) -> list[int]:
        return _labels(n, [e for e in self.Z], self._edges)

    _edges: tuple = ()


def _labels(n, chosen, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in chosen:
        a, b = edges[e]
        parent[find(a)] = find(b)
    return [find(v) for v in range(n)]


def pc_cluster(P: PotentialGraph) -> ClusteringResult:
    """Edge set ``Z`` with ``c(Z) <= 2 * sum(phi)``."""
    n = P.n
    members = {v: frozenset([v]) for v in range(n)}
    budget = {v: P.phi[v] for v in range(n)}
    active = {v: P.phi[v] > 0 for v in range(n)}
    grown = {v: Fraction(0) for v in range(n)}
    died = set(v for v in range(n) if not active[v])
    where = list(range(n))
    load = [Fraction(0)] * len(P.edges)
    next_id = n
    now = Fraction(0)
    bought = []
    events = []
    alive = set(range(n))
    while True:
        best = None
        for c in sorted(alive):
            if active[c]:
                t = budget[c]
                if best is None or t < best[0]:
                    best = (t, 0, c)
        for e, (a, b) in enumerate(P.edges):
            ca, cb = where[a], where[b]
            if ca == cb:
                continue
            rate = int(active[ca]) + int(active[cb])
            if rate == 0:
                continue
            t = (P.costs[e] - load[e]) / rate
            if best is None or (t, 1, e) < best:
                best = (t, 1, e)
        if best is None:
            break
        dt, kind, x = best
        if dt < 0:
            dt = Fraction(0)
        if dt:
            for e, (a, b) in enumerate(P.edges):
                ca, cb = where[a], where[b]
                if ca != cb:
                    load[e] += dt * (int(active[ca]) + int(active[cb]))
            for c in alive:
                if active[c]:
                    grown[c] += dt
                    budget[c] -= dt
        now += dt
        if kind == 0:
            active[x] = False
            died.add(x)
            events.append((now, "dead", x))
            continue
        a, b = P.edges[x]
        ca, cb = where[a], where[b]
        new = next_id
        next_id += 1
        members[new] = members[ca] | members[cb]
        budget[new] = budget[ca] + budget[cb]
        active[new] = budget[new] > 0
        grown[new] = Fraction(0)
        for v in members[new]:
            where[v] = new
        alive -= {ca, cb}
        alive.add(new)
        bought.append(x)
        events.append((now, "buy", x))
        if not active[new]:
            died.add(new)
    Z = set(bought)
    changed = True
    dead = sorted(died, reverse=True)
    while changed:
        changed = False
        for c in dead:
            S = members[c]
            crossing = [e for e in Z if (P.edges[e][0] in S) != (P.edges[e][1] in S)]
            if len(crossing) == 1:
                Z.discard(crossing[0])
                changed = True
    cost = sum((P.costs[e] for e in Z), Fraction(0))
    total = sum(P.phi, Fraction(0))
    if cost > 2 * total:
        raise PlanarError("clustering cost %s exceeds twice the potential %s" % (cost, total))
    res = ClusteringResult(frozenset(Z), tuple(bought), events, grown, cost, total)
    res._edges = P.edges
    return res


def exists_exception_set(P: PotentialGraph, Z: frozenset, H: Sequence[int]) -> Optional[frozenset]:
    """Search for ``U`` with ``phi(U) <= c(H)`` so that vertices outside ``U``
    joined in ``H`` are joined by ``Z``; ``None`` if there is none."""
    cH = sum((P.costs[e] for e in H), Fraction(0))
    hl = _labels(P.n, H, P.edges)
    zl = _labels(P.n, Z, P.edges)
    verts = range(P.n)
    for mask in range(1 << P.n):
        U = [v for v in verts if mask >> v & 1]
        if sum((P.phi[v] for v in U), Fraction(0)) > cH:
            continue
        Us = set(U)
        ok = True
        rep: dict = {}
        for v in verts:
            if v in Us:
                continue
            key = hl[v]
            if key in rep and zl[rep[key]] != zl[v]:
                ok = False
                break
            rep.setdefault(key, v)
        if ok:
            return frozenset(U)
    return None


@dataclass
class WellConnectedCover:
    cover: DoubleCover
    boundary_edges: frozenset  # edges of R2 lifted from region boundary cycles
    contracted: PotentialGraph
    vertex_map: tuple  # R2 vertex -> contracted vertex
    edge_map: tuple  # contracted edge -> R2 edge
    clustering: ClusteringResult
    Z: frozenset  # R2 edges
    components: list = field(default_factory=list)  # list of R2 edge sets

    @property
    def edges(self) -> frozenset:
        return self.boundary_edges | self.Z

    @property
    def cost(self) -> Fraction:
        c = self.cover.cover
        return sum((c.costs[e] for e in self.Z), Fraction(0))


def build_well_connected_cover(D: DoubleCover, eps) -> WellConnectedCover:
    """Contract the lifted boundary, cluster with potentials ``c / eps``, and
    return the components of boundary plus bought edges."""
    eps = Fraction(eps)
    c = D.cover
    bd_base = D.region.boundary_edges()
    boundary = frozenset(e2 for e2 in range(c.m) if D.project_edge(e2) in bd_base)
    root = _labels(c.n, sorted(boundary), c.ends)
    reps = sorted(set(root))
    idx = {r: i for i, r in enumerate(reps)}
    vmap = tuple(idx[root[v]] for v in range(c.n))
    pot = [Fraction(0)] * len(reps)
    for e in boundary:
        pot[vmap[c.ends[e][0]]] += c.costs[e]
    phi = [p / eps for p in pot]
    edges, costs, emap = [], [], []
    for e in range(c.m):
        if e in boundary:
            continue
        a, b = vmap[c.ends[e][0]], vmap[c.ends[e][1]]
        if a == b:
            continue
        edges.append((a, b))
        costs.append(c.costs[e])
        emap.append(e)
    P = PotentialGraph.make(len(reps), edges, costs, phi)
    res = pc_cluster(P)
    Z = frozenset(emap[e] for e in res.Z)
    W = WellConnectedCover(D, boundary, P, vmap, tuple(emap), res, Z)
    W.components = _edge_components(c, boundary | Z)
    return W


def _edge_components(c, edges) -> list:
    lab = _labels(c.n, sorted(edges), c.ends)
    groups: dict = {}
    for e in sorted(edges):
        groups.setdefault(lab[c.ends[e][0]], set()).add(e)
    return [frozenset(s) for _, s in sorted(groups.items(), key=lambda kv: min(kv[1]))]
