"""End-to-end bipartition: scale, build a spanner, contract, thin, decompose, solve, lift."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .oracles import BipartitionSolution, exact_bipartition
from .planar import EmbeddedGraph, PlanarError, contract_edges, dualize, with_outer_vertex
from .spanner import build_spanner

DEFAULT_KMAX = 6
DEFAULT_STATE_LIMIT = 2_000_000


class ResourceSkip(PlanarError):
    """The dynamic program for this parameter choice would be too large."""


@dataclass(frozen=True)
class SimpleGraph:
    """Unembedded multigraph with vertex weights and edge costs."""

    n: int
    edges: tuple  # (u, v)
    costs: tuple
    weights: tuple

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def total_cost(self) -> Fraction:
        return sum(self.costs, Fraction(0))

    def cut_cost(self, side_u) -> Fraction:
        U = set(side_u)
        return sum((c for (a, b), c in zip(self.edges, self.costs) if (a in U) != (b in U)), Fraction(0))

    @classmethod
    def of(cls, g: EmbeddedGraph, weights=None) -> "SimpleGraph":
        w = g.vertex_weights if weights is None else weights
        return cls(g.n, g.ends, g.costs, tuple(w))


# -- scaling -------------------------------------------------------------------


@dataclass(frozen=True)
class ScaledInstance:
    original: EmbeddedGraph
    scaled: EmbeddedGraph
    factor: Fraction  # n / (eps * W)

    @property
    def error_per_vertex(self) -> Fraction:
        """Truncation error per vertex in original units."""
        return 1 / self.factor


def scale_weights(g: EmbeddedGraph, eps, n: Optional[int] = None) -> ScaledInstance:
    """``w(v) <- floor(w(v) * n / (eps * W))``."""
    eps = Fraction(eps)
    W = sum(g.vertex_weights)
    if W <= 0:
        raise PlanarError("scaling needs positive total weight")
    n = g.n if n is None else n
    factor = Fraction(n) / (eps * W)
    w = [math.floor(x * factor) for x in g.vertex_weights]
    sg = EmbeddedGraph(g.n, g.ends, g.costs, g.rotation, vertex_weights=w)
    return ScaledInstance(g, sg, factor)


# -- contraction -------------------------------------------------------------------


@dataclass(frozen=True)
class Contraction:
    graph: SimpleGraph
    provenance: tuple  # contracted vertex -> original vertices
    edge_origin: tuple  # contracted edge -> original edge
    dropped_cost: Fraction  # kept edges that became loops

    def lift(self, side_u) -> frozenset:
        return frozenset(v for x in side_u for v in self.provenance[x])

    def vertex_of(self, v: int) -> int:
        for x, group in enumerate(self.provenance):
            if v in group:
                return x
        raise KeyError(v)


def contract_to_spanner(primal: EmbeddedGraph, kept_edges) -> Contraction:
    """Contract every primal edge whose dual is not in ``kept_edges``."""
    kept = set(kept_edges)
    weights, new_edges, prov, _ = contract_edges(primal, [e for e in range(primal.m) if e not in kept])
    g = SimpleGraph(
        len(weights),
        tuple((a, b) for a, b, _, _ in new_edges),
        tuple(c for _, _, c, _ in new_edges),
        tuple(weights),
    )
    survived = {e for _, _, _, e in new_edges}
    dropped = sum((primal.costs[e] for e in kept if e not in survived), Fraction(0))
    if g.total_cost + dropped != sum((primal.costs[e] for e in kept), Fraction(0)):
        raise PlanarError("contraction cost accounting drifted")
    return Contraction(g, tuple(prov), tuple(e for _, _, _, e in new_edges), dropped)


# -- thinning --------------------------------------------------------------------


@dataclass(frozen=True)
class Thinning:
    k: int
    residue: int
    removed: frozenset  # edge ids
    levels: tuple  # BFS level per vertex
    class_costs: tuple

    def cost(self, g: SimpleGraph) -> Fraction:
        return sum((g.costs[e] for e in self.removed), Fraction(0))


def bfs_levels(g: SimpleGraph) -> list[int]:
    adj = [[] for _ in range(g.n)]
    for a, b in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    level = [-1] * g.n
    for s in range(g.n):
        if level[s] != -1:
            continue
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in sorted(adj[v]):
                if level[u] == -1:
                    level[u] = level[v] + 1
                    queue.append(u)
    return level


def thin(g: SimpleGraph, k: int) -> Thinning:
    """Delete the cheapest residue class of BFS edge levels modulo ``k``."""
    if k < 1:
        raise PlanarError("k must be at least 1")
    level = bfs_levels(g)
    elevel = [min(level[a], level[b]) for a, b in g.edges]
    costs = [Fraction(0)] * k
    for e, L in enumerate(elevel):
        costs[L % k] += g.costs[e]
    i = min(range(k), key=lambda j: (costs[j], j))
    removed = frozenset(e for e, L in enumerate(elevel) if L % k == i)
    t = Thinning(k, i, removed, tuple(level), tuple(costs))
    if t.cost(g) * k > g.total_cost:
        raise PlanarError("thinning removed more than a 1/k share")
    span = slab_spans(g, t)
    if span and max(span) > k + 1:
        raise PlanarError("a thinned component spans %d levels" % max(span))
    return t


def slab_spans(g: SimpleGraph, t: Thinning) -> list[int]:
    """Number of BFS levels touched by each component after thinning."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (a, b) in enumerate(g.edges):
        if e not in t.removed:
            parent[find(a)] = find(b)
    groups: dict = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(t.levels[v])
    return [max(ls) - min(ls) + 1 for ls in groups.values()]


def remove_edges(g: SimpleGraph, removed) -> SimpleGraph:
    keep = [e for e in range(len(g.edges)) if e not in removed]
    return SimpleGraph(g.n, tuple(g.edges[e] for e in keep), tuple(g.costs[e] for e in keep), g.weights)


# -- tree decomposition -----------------------------------------------------------


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple  # frozensets
    tree: tuple  # (i, j) pairs between bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def check(self, n: int, edges) -> None:
        covered = set().union(*self.bags) if self.bags else set()
        if covered != set(range(n)):
            raise PlanarError("tree decomposition misses a vertex")
        for a, b in edges:
            if not any(a in B and b in B for B in self.bags):
                raise PlanarError("tree decomposition misses edge (%d, %d)" % (a, b))
        T = nx.Graph()
        T.add_nodes_from(range(len(self.bags)))
        T.add_edges_from(self.tree)
        if len(self.bags) and not nx.is_tree(T):
            raise PlanarError("decomposition graph is not a tree")
        for v in range(n):
            holding = [i for i, B in enumerate(self.bags) if v in B]
            if not nx.is_connected(T.subgraph(holding)):
                raise PlanarError("bags holding vertex %d are not connected" % v)


def tree_decompose(g: SimpleGraph) -> TreeDecomposition:
    """Min-fill-in heuristic decomposition, with the three axioms verified."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from((a, b) for a, b in g.edges if a != b)
    if g.n == 0:
        return TreeDecomposition((), ())
    _, T = treewidth_min_fill_in(G)
    nodes = sorted(T.nodes, key=lambda B: (len(B), sorted(B)))
    index = {B: i for i, B in enumerate(nodes)}
    bags = tuple(frozenset(B) for B in nodes)
    tree = tuple(sorted(tuple(sorted((index[a], index[b]))) for a, b in T.edges))
    if len(bags) > 1 and len(tree) < len(bags) - 1:
        # join the pieces of a forest
        F = nx.Graph()
        F.add_nodes_from(range(len(bags)))
        F.add_edges_from(tree)
        comps = [min(c) for c in nx.connected_components(F)]
        tree = tree + tuple((comps[0], c) for c in comps[1:])
    td = TreeDecomposition(bags, tree)
    td.check(g.n, g.edges)
    return td


# -- dynamic program ---------------------------------------------------------------


def dp_bipartition(
    g: SimpleGraph,
    td: TreeDecomposition,
    lo: int,
    hi: int,
    anchor: Optional[int] = None,
    state_limit: int = DEFAULT_STATE_LIMIT,
    profile_only: bool = False,
    target=None,
):
    """Exact minimum cut with ``lo <= w(U) <= hi`` over a tree decomposition.

    ``anchor`` is kept on the V side.  Ties go to the weight of U closest to
    ``target`` (when given), then to the smaller weight.
    With ``profile_only`` the result is a map from each achievable weight in
    the window to its minimum cost.
    """
    W = g.total_weight
    lo, hi = max(lo, 0), min(hi, W)
    if lo > hi and not profile_only:
        raise PlanarError("infeasible window [%s, %s]" % (lo, hi))
    if g.n == 0:
        if profile_only:
            return {0: Fraction(0)} if lo <= 0 else {}
        if lo <= 0:
            return BipartitionSolution(frozenset(), Fraction(0), 0, 0)
        raise PlanarError("infeasible window [%s, %s]" % (lo, hi))
    if (2 ** (td.width + 1)) * (hi + 1) * len(td.bags) > state_limit:
        raise ResourceSkip("about %d states" % ((2 ** (td.width + 1)) * (hi + 1) * len(td.bags)))
    nb = len(td.bags)
    adj = [[] for _ in range(nb)]
    for a, b in td.tree:
        adj[a].append(b)
        adj[b].append(a)
    root = 0
    parent = [-1] * nb
    order = []
    seen = {root}
    queue = deque([root])
    while queue:
        t = queue.popleft()
        order.append(t)
        for s in sorted(adj[t]):
            if s not in seen:
                seen.add(s)
                parent[s] = t
                queue.append(s)
    depth = [0] * nb
    for t in order[1:]:
        depth[t] = depth[parent[t]] + 1
    children = [[] for _ in range(nb)]
    for t in order[1:]:
        children[parent[t]].append(t)
    top = {}
    for v in range(g.n):
        top[v] = min((t for t in range(nb) if v in td.bags[t]), key=lambda t: (depth[t], t))
    own_edges = [[] for _ in range(nb)]
    for e, (a, b) in enumerate(g.edges):
        if a == b:
            continue
        t = min((t for t in range(nb) if a in td.bags[t] and b in td.bags[t]), key=lambda t: (depth[t], t))
        own_edges[t].append(e)

    bag_list = [sorted(B) for B in td.bags]
    tables: list = [None] * nb  # t -> {assignment: {w: (cost, choices)}}
    projections: list = [None] * nb  # t -> {key on parent bag: {w: (cost, assignment)}}
    for t in reversed(order):
        verts = bag_list[t]
        pos = {v: i for i, v in enumerate(verts)}
        table = {}
        for alpha in product((0, 1), repeat=len(verts)):
            if anchor is not None and anchor in pos and alpha[pos[anchor]]:
                continue
            w0 = sum(g.weights[v] for v in verts if top[v] == t and alpha[pos[v]])
            if w0 > hi:
                continue
            c0 = sum(
                (g.costs[e] for e in own_edges[t] if alpha[pos[g.edges[e][0]]] != alpha[pos[g.edges[e][1]]]),
                Fraction(0),
            )
            acc = {w0: (c0, ())}
            for s in children[t]:
                shared = [v for v in bag_list[s] if v in pos]
                key = tuple(alpha[pos[v]] for v in shared)
                proj = projections[s].get(key)
                if not proj:
                    acc = {}
                    break
                nxt: dict = {}
                for w1 in sorted(acc):
                    c1, ch = acc[w1]
                    for w2 in sorted(proj):
                        w = w1 + w2
                        if w > hi:
                            break
                        c2, beta = proj[w2]
                        cand = (c1 + c2, ch + ((s, beta, w2),))
                        if w not in nxt or cand[0] < nxt[w][0]:
                            nxt[w] = cand
                acc = nxt
            if acc:
                table[alpha] = acc
        tables[t] = table
        if parent[t] != -1:
            pverts = set(bag_list[parent[t]])
            shared_idx = [i for i, v in enumerate(verts) if v in pverts]
            proj: dict = {}
            for alpha in sorted(table):
                key = tuple(alpha[i] for i in shared_idx)
                bucket = proj.setdefault(key, {})
                for w, (c, _) in table[alpha].items():
                    if w not in bucket or c < bucket[w][0]:
                        bucket[w] = (c, alpha)
            projections[t] = proj
    if profile_only:
        out: dict = {}
        for alpha in tables[root]:
            for w, (c, _) in tables[root][alpha].items():
                if w not in out or c < out[w]:
                    out[w] = c
        return out
    best = None
    for alpha in sorted(tables[root]):
        for w, (c, _) in tables[root][alpha].items():
            if lo <= w <= hi:
                key = (c, abs(w - target) if target is not None else 0, w, alpha)
                if best is None or key < best:
                    best = key
    if best is None:
        raise PlanarError("infeasible window [%s, %s]" % (lo, hi))
    cost, _, wu, alpha = best
    U = set()
    stack = [(root, alpha, wu)]
    while stack:
        t, a, w = stack.pop()
        verts = bag_list[t]
        U.update(v for i, v in enumerate(verts) if a[i])
        _, choices = tables[t][a][w]
        for s, beta, w2 in choices:
            stack.append((s, beta, w2))
    U = frozenset(U)
    got_w = sum(g.weights[v] for v in U)
    got_c = g.cut_cost(U)
    if got_w != wu or got_c != cost:
        raise PlanarError("witness does not reproduce the table entry")
    return BipartitionSolution(U, cost, wu, W)


# -- lifting and the outer loop ---------------------------------------------------


def lift(primal: EmbeddedGraph, contraction: Optional[Contraction], side_u) -> BipartitionSolution:
    """Expand a contracted side to original vertices and recompute everything."""
    U = contraction.lift(side_u) if contraction is not None else frozenset(side_u)
    g = SimpleGraph.of(primal)
    return BipartitionSolution(U, g.cut_cost(U), sum(primal.vertex_weights[v] for v in U), g.total_weight)


@dataclass
class SolveReport:
    b: Fraction
    eps: Fraction
    scaled_total: int
    lambdas: list = field(default_factory=list)  # per-lambda records
    best_lambda: Optional[Fraction] = None
    cost: Optional[Fraction] = None
    balance: Optional[Fraction] = None
    guaranteed_window: tuple = ()
    aggregate_window: tuple = ()

    def as_dict(self) -> dict:
        def conv(x):
            if isinstance(x, Fraction):
                return str(x)
            if isinstance(x, dict):
                return {k: conv(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [conv(v) for v in x]
            return x

        return conv(
            {
                "b": self.b,
                "epsilon": self.eps,
                "scaled_total_weight": self.scaled_total,
                "lambda_trace": self.lambdas,
                "best_lambda": self.best_lambda,
                "cost": self.cost,
                "balance": self.balance,
                "guaranteed_window": self.guaranteed_window,
                "aggregate_window": self.aggregate_window,
            }
        )


def lambda_grid(costs: Sequence[Fraction], W: int) -> list[Fraction]:
    positive = [c for c in costs if c > 0]
    if not positive or W <= 0:
        return [Fraction(0)]
    lam = Fraction(min(positive), W)
    top = 2 * sum(positive, Fraction(0)) / W
    out = []
    while lam <= top:
        out.append(lam)
        lam *= 2
    return out


def solve(
    g: EmbeddedGraph,
    b,
    eps,
    lambdas: Optional[Sequence] = None,
    kmax: int = DEFAULT_KMAX,
    state_limit: int = DEFAULT_STATE_LIMIT,
    stage: str = "all",
    outer: Optional[int] = None,
) -> tuple[Optional[BipartitionSolution], SolveReport]:
    """Approximate minimum-cost ``b``-bipartition of the primal graph ``g``.

    ``U`` never contains the outer vertex added for the outer face.
    """
    b, eps = Fraction(b), Fraction(eps)
    if not 0 <= b <= 1 or eps <= 0:
        raise PlanarError("need 0 <= b <= 1 and eps > 0")
    W = sum(g.vertex_weights)
    if W == 0:
        raise PlanarError("total weight must be positive")
    sc = scale_weights(g, eps)
    primal, anchor = with_outer_vertex(sc.scaled, outer)
    dual = dualize(primal, anchor)
    Ws = sum(primal.vertex_weights)
    lo = max(0, math.ceil((b - eps) * Ws))
    hi = min(Ws, math.floor((b + eps) * Ws))
    report = SolveReport(b, eps, Ws)
    report.guaranteed_window = (max(Fraction(0), (b - eps) * (1 - eps)), min(Fraction(1), b + 2 * eps))
    report.aggregate_window = (max(Fraction(0), b - 8 * eps), min(Fraction(1), b + 8 * eps))
    grid = lambda_grid(primal.costs, Ws) if lambdas is None else [Fraction(x) for x in lambdas]
    best = None
    for lam in grid:
        rec: dict = {"lambda": lam}
        report.lambdas.append(rec)
        S = build_spanner(dual, lam, eps)
        rec["spanner_cost"] = S.cost
        rec["tag_costs"] = S.tag_costs()
        if stage == "spanner":
            continue
        con = contract_to_spanner(primal, S.edges)
        H = con.graph
        rho = S.cost / (lam * Ws) if lam > 0 else Fraction(0)
        k = max(1, math.ceil(rho / eps)) if lam > 0 else 1
        rec["rho"] = rho
        rec["k_wanted"] = k
        k = min(k, kmax)
        rec["k"] = k
        th = thin(H, k)
        rec["thinning_cost"] = th.cost(H)
        rec["contracted_cost"] = H.total_cost
        if stage == "thin":
            continue
        H2 = remove_edges(H, th.removed)
        td = tree_decompose(H2)
        rec["width"] = td.width
        anchor_c = con.vertex_of(anchor)
        try:
            sol = dp_bipartition(H2, td, lo, hi, anchor_c, state_limit, target=b * Ws)
        except ResourceSkip as exc:
            rec["status"] = "resource-skip: %s" % exc
            continue
        except PlanarError as exc:
            rec["status"] = "infeasible: %s" % exc
            continue
        rec["dp_cost"] = sol.cost
        lifted = lift(g_with_anchor(g, primal), con, sol.side_u)
        rec["lifted_cost"] = lifted.cost
        if lifted.cost > sol.cost + th.cost(H):
            raise PlanarError("lifted cost exceeds DP cost plus thinning cost")
        if H.n <= 20:
            ref = exact_bipartition(H.n, H.edges, H.costs, H.weights, lo, hi, anchor_c)
            rec["contracted_opt"] = ref.cost
            if sol.cost + th.cost(H) > ref.cost + H.total_cost / k:
                raise PlanarError("cost chain violated")
        U = frozenset(v for v in lifted.side_u if v != anchor)
        final = BipartitionSolution(U, SimpleGraph.of(g).cut_cost(U), sum(g.vertex_weights[v] for v in U), W)
        lw, hw = report.guaranteed_window
        if not lw <= final.balance <= hw:
            raise PlanarError("returned balance %s outside %s" % (final.balance, report.guaranteed_window))
        rec["status"] = "ok"
        rec["cost"] = final.cost
        rec["balance"] = final.balance
        key = (final.cost, abs(final.balance - b), final.weight_u)
        if best is None or key < best[2]:
            best = (final, lam, key)
    if best is None:
        if stage != "all":
            return None, report
        raise PlanarError("no lambda produced a feasible solution: %s" % [r.get("status") for r in report.lambdas])
    report.best_lambda = best[1]
    report.cost = best[0].cost
    report.balance = best[0].balance
    return best[0], report


def g_with_anchor(g: EmbeddedGraph, primal: EmbeddedGraph) -> EmbeddedGraph:
    """``primal`` carries scaled weights; swap the original ones back in."""
    w = list(g.vertex_weights) + [0] * (primal.n - g.n)
    return EmbeddedGraph(primal.n, primal.ends, primal.costs, primal.rotation, vertex_weights=w)
