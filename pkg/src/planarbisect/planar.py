"""Embedded planar multigraphs as rotation systems over darts.

Dart ``d`` belongs to edge ``d >> 1``; dart ``2e`` runs from ``ends[e][0]`` to
``ends[e][1]`` and ``rev(d) = d ^ 1``.  Rotations list the darts leaving each
vertex in clockwise order, and faces are traced with the rule
``succ(d) = next_cw(rev(d))``.  For a dart ``d`` the face ``face_of[d]`` is the
face whose boundary walk uses ``d``; a cycle "encloses" the faces lying on the
face side of its darts when it is traversed positively.
"""

from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class PlanarError(ValueError):
    """Raised for malformed embeddings and violated preconditions."""


def rev(d: int) -> int:
    return d ^ 1


def edge_of(d: int) -> int:
    return d >> 1


class EmbeddedGraph:
    """Connected planar embedded multigraph with edge costs.

    Vertex weights are used for primal graphs, face weights for duals.  The
    object is treated as immutable; all derived tables are built in
    ``__init__``.
    """

    def __init__(
        self,
        n: int,
        ends: Sequence[tuple[int, int]],
        costs: Sequence,
        rotation: Sequence[Sequence[int]],
        vertex_weights: Optional[Sequence[int]] = None,
        face_weights: Optional[Sequence[int]] = None,
        outer_face: Optional[int] = None,
        face_origin: Optional[Sequence[int]] = None,
    ):
        self.n = n
        self.ends = tuple((int(u), int(v)) for u, v in ends)
        self.m = len(self.ends)
        self.costs = tuple(Fraction(c) for c in costs)
        self.rotation = tuple(tuple(r) for r in rotation)
        self.vertex_weights = tuple(vertex_weights) if vertex_weights is not None else (0,) * n
        if len(self.costs) != self.m or len(self.rotation) != n or len(self.vertex_weights) != n:
            raise PlanarError("inconsistent table sizes")
        if any(c < 0 for c in self.costs) or any(w < 0 for w in self.vertex_weights):
            raise PlanarError("costs and weights must be nonnegative")
        for u, v in self.ends:
            if not (0 <= u < n and 0 <= v < n):
                raise PlanarError("edge endpoint out of range")

        self.tail = [0] * (2 * self.m)
        self.head = [0] * (2 * self.m)
        for e, (u, v) in enumerate(self.ends):
            self.tail[2 * e], self.head[2 * e] = u, v
            self.tail[2 * e + 1], self.head[2 * e + 1] = v, u

        self._next_cw = [-1] * (2 * self.m)
        self._prev_cw = [-1] * (2 * self.m)
        for v, rot in enumerate(self.rotation):
            for i, d in enumerate(rot):
                if not 0 <= d < 2 * self.m:
                    raise PlanarError("malformed rotation: unknown dart %d" % d)
                if self._next_cw[d] != -1:
                    raise PlanarError("malformed rotation: dart %d listed twice" % d)
                if self.tail[d] != v:
                    raise PlanarError("malformed rotation: dart %d not at its tail" % d)
                self._next_cw[d] = rot[(i + 1) % len(rot)]
                self._prev_cw[rot[(i + 1) % len(rot)]] = d
        if any(x == -1 for x in self._next_cw):
            raise PlanarError("malformed rotation: dart missing from rotation")
        if not self._connected():
            raise PlanarError("graph is disconnected")

        self.face_of = [-1] * (2 * self.m)
        faces: list[tuple[int, ...]] = []
        for start in range(2 * self.m):
            if self.face_of[start] != -1:
                continue
            walk = []
            d = start
            while self.face_of[d] == -1:
                self.face_of[d] = len(faces)
                walk.append(d)
                d = self.succ(d)
            faces.append(tuple(walk))
        if self.m == 0:
            faces.append(())
        self.faces = tuple(faces)
        self.num_faces = len(faces)
        if self.n - self.m + self.num_faces != 2:
            raise PlanarError(
                "non-planar rotation: V - E + F = %d" % (self.n - self.m + self.num_faces)
            )

        if face_weights is not None:
            if len(face_weights) != self.num_faces:
                raise PlanarError("face weight table has wrong size")
            if any(w < 0 for w in face_weights):
                raise PlanarError("face weights must be nonnegative")
        self.face_weights = tuple(face_weights) if face_weights is not None else (0,) * self.num_faces
        self.outer_face = outer_face
        self.face_origin = tuple(face_origin) if face_origin is not None else None

    # -- basic navigation -------------------------------------------------

    def next_cw(self, d: int) -> int:
        return self._next_cw[d]

    def prev_cw(self, d: int) -> int:
        return self._prev_cw[d]

    def succ(self, d: int) -> int:
        """Next dart along the face boundary that contains ``d``."""
        return self._next_cw[d ^ 1]

    def darts(self) -> range:
        return range(2 * self.m)

    def dart_cost(self, d: int) -> Fraction:
        return self.costs[d >> 1]

    def walk_cost(self, walk: Iterable[int]) -> Fraction:
        return sum((self.costs[d >> 1] for d in walk), Fraction(0))

    def edge_faces(self, e: int) -> tuple[int, int]:
        return self.face_of[2 * e], self.face_of[2 * e + 1]

    @property
    def total_weight(self) -> int:
        """Total face weight; the quantity W of the dual graph."""
        return sum(self.face_weights)

    @property
    def total_cost(self) -> Fraction:
        return sum(self.costs, Fraction(0))

    def adjacency(self) -> list[list[int]]:
        """Outgoing darts per vertex (rotation order)."""
        return [list(r) for r in self.rotation]

    def _connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for d in self.rotation[v]:
                w = self.head[d]
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def face_adjacency(self) -> list[list[tuple[int, int]]]:
        """For each face, the (edge, neighbouring face) pairs across its boundary."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_faces)]
        for e in range(self.m):
            f, g = self.edge_faces(e)
            adj[f].append((e, g))
            if f != g:
                adj[g].append((e, f))
        return adj

    def __repr__(self) -> str:
        return "EmbeddedGraph(V=%d, E=%d, F=%d)" % (self.n, self.m, self.num_faces)


# -- construction helpers ---------------------------------------------------


def from_neighbor_order(n, edges, costs, order, vertex_weights=None) -> EmbeddedGraph:
    """Build a graph from per-vertex clockwise lists of edge ids.

    ``order[v]`` lists the incident edge ids of ``v`` clockwise; a self-loop
    must appear twice (first occurrence is its ``u``-end).
    """
    rotation = []
    for v, eids in enumerate(order):
        used: set[int] = set()
        rot = []
        for e in eids:
            u, w = edges[e]
            if u == w:
                d = 2 * e if 2 * e not in used else 2 * e + 1
            else:
                d = 2 * e if u == v else 2 * e + 1
            used.add(d)
            rot.append(d)
        rotation.append(rot)
    return EmbeddedGraph(n, edges, costs, rotation, vertex_weights=vertex_weights)


def with_outer_vertex(g: EmbeddedGraph, outer: Optional[int] = None) -> tuple[EmbeddedGraph, int]:
    """Return ``g`` plus the vertex that plays the infinite face in the dual.

    An explicit ``outer`` must have weight zero and only zero-cost edges.
    Otherwise a vertex of that kind is reused (lowest id), or a pendant
    zero-weight vertex is attached by a zero-cost edge to vertex 0.  In the
    dual this is the zero-cost self-loop bounding a zero-weight face.
    """
    if outer is not None:
        if g.vertex_weights[outer] != 0 or any(g.dart_cost(d) != 0 for d in g.rotation[outer]):
            raise PlanarError("outer vertex must have zero weight and zero-cost edges")
        return g, outer
    for v in range(g.n):
        if g.vertex_weights[v] == 0 and all(g.dart_cost(d) == 0 for d in g.rotation[v]):
            if g.rotation[v]:
                return g, v
    e = g.m
    new = g.n
    rotation = [list(r) for r in g.rotation]
    if g.n:
        rotation[0].append(2 * e)
    else:
        raise PlanarError("empty graph")
    rotation.append([2 * e + 1])
    g2 = EmbeddedGraph(
        g.n + 1,
        list(g.ends) + [(0, new)],
        list(g.costs) + [Fraction(0)],
        rotation,
        vertex_weights=list(g.vertex_weights) + [0],
    )
    return g2, new


def dualize(g: EmbeddedGraph, outer_vertex: Optional[int] = None) -> EmbeddedGraph:
    """Planar dual.  Edge ids are shared; primal vertex weights become face weights.

    Dual dart ``d`` crosses primal dart ``d`` from its face side to the other
    side; the dual face around primal vertex ``v`` is bounded by the duals of
    the darts entering ``v`` and is mapped back through ``face_origin``.  If ``g`` itself carries face weights they
    become dual vertex weights, and ``g.outer_face`` (when set) is not
    transported since it names a dual vertex.
    """
    ends = [(g.face_of[2 * e], g.face_of[2 * e + 1]) for e in range(g.m)]
    rotation = [tuple(reversed(f)) for f in g.faces]
    dual = EmbeddedGraph(g.num_faces, ends, g.costs, rotation, vertex_weights=g.face_weights)
    origin = [-1] * dual.num_faces
    for f, walk in enumerate(dual.faces):
        owners = {g.head[d] for d in walk}
        if len(owners) != 1:
            raise PlanarError("dual face does not correspond to one primal vertex")
        origin[f] = owners.pop()
    if g.n == 1 and g.m == 0:
        origin = [0]
    face_of_vertex = {v: f for f, v in enumerate(origin)}
    face_weights = [g.vertex_weights[origin[f]] for f in range(dual.num_faces)]
    outer = face_of_vertex[outer_vertex] if outer_vertex is not None else None
    return EmbeddedGraph(
        dual.n,
        ends,
        g.costs,
        rotation,
        vertex_weights=g.face_weights,
        face_weights=face_weights,
        outer_face=outer,
        face_origin=origin,
    )


def primal_and_dual(g: EmbeddedGraph, outer: Optional[int] = None) -> tuple[EmbeddedGraph, EmbeddedGraph, int]:
    """Normalize the outer vertex of primal ``g`` and return (primal, dual, anchor)."""
    gp, anchor = with_outer_vertex(g, outer)
    return gp, dualize(gp, outer_vertex=anchor), anchor


# -- walks, enclosure, crossing -----------------------------------------------


def is_closed_walk(g: EmbeddedGraph, walk: Sequence[int]) -> bool:
    if not walk:
        return False
    return all(g.head[walk[i]] == g.tail[walk[(i + 1) % len(walk)]] for i in range(len(walk)))


def odd_edges(walks: Iterable[int]) -> set[int]:
    """Edges used an odd number of times by a dart multiset."""
    odd: set[int] = set()
    for d in walks:
        odd ^= {d >> 1}
    return odd


def enclosed_faces(g: EmbeddedGraph, darts: Iterable[int]) -> frozenset[int]:
    """Faces enclosed by a set of closed walks (parity labelling from the outer face)."""
    if g.outer_face is None:
        raise PlanarError("graph has no designated outer face")
    odd = odd_edges(darts)
    parity = [-1] * g.num_faces
    parity[g.outer_face] = 0
    queue = deque([g.outer_face])
    adj = _face_adj(g)
    while queue:
        f = queue.popleft()
        for e, h in adj[f]:
            if parity[h] == -1:
                parity[h] = parity[f] ^ (1 if e in odd else 0)
                queue.append(h)
    return frozenset(f for f in range(g.num_faces) if parity[f] == 1)


def encloses(g: EmbeddedGraph, darts: Iterable[int], face: int) -> bool:
    if face == g.outer_face:
        return False
    return face in enclosed_faces(g, darts)


def encloses_along(g: EmbeddedGraph, darts: Iterable[int], face_path: Sequence[int]) -> bool:
    """Enclosure decided along an explicit outer-to-face path of edge ids.

    Counts signed crossings ``|P ∩ C*| - |P ∩ rev(C*)|``; only the parity is
    meaningful, so both orientations add one.
    """
    counts: dict[int, int] = {}
    for d in darts:
        counts[d >> 1] = counts.get(d >> 1, 0) + 1
    return sum(counts.get(e, 0) for e in face_path) % 2 == 1


def enclosed_weight(g: EmbeddedGraph, darts: Iterable[int], weights: Optional[Sequence[int]] = None) -> int:
    w = g.face_weights if weights is None else weights
    return sum(w[f] for f in enclosed_faces(g, darts))


def _face_adj(g: EmbeddedGraph):
    cached = getattr(g, "_face_adj_cache", None)
    if cached is None:
        cached = g.face_adjacency()
        g._face_adj_cache = cached
    return cached


def _cyclic_order(g: EmbeddedGraph, v: int, darts_out: Sequence[int]) -> bool:
    """True when the outgoing darts at ``v`` appear in this clockwise cyclic order."""
    rot = g.rotation[v]
    pos = {d: i for i, d in enumerate(rot)}
    idx = [pos[d] for d in darts_out]
    if len(set(idx)) != len(idx):
        return False
    k = len(rot)
    rel = [(i - idx[0]) % k for i in idx]
    return rel == sorted(rel)


def _crossing_at(g, P, Q, i, j, p_closed, q_closed) -> bool:
    """Check the crossing configuration with ``a = P[i]`` and ``c = Q[j]``."""
    lp, lq = len(P), len(Q)

    def at(seq, k, closed):
        if closed:
            return seq[k % len(seq)]
        return seq[k] if 0 <= k < len(seq) else None

    a, c = P[i], Q[j]
    if a == c or g.head[a] != g.head[c]:
        return False
    length = 0
    limit = min(lp, lq)
    while length < limit:
        x, y = at(P, i + 1 + length, p_closed), at(Q, j + 1 + length, q_closed)
        if x is None or y is None or x != y:
            break
        length += 1
    b, d = at(P, i + 1 + length, p_closed), at(Q, j + 1 + length, q_closed)
    if b is None or d is None or b == d:
        return False
    a_next = at(P, i + 1, p_closed)
    b_prev = at(P, i + length, p_closed)
    v = g.head[a]
    u = g.tail[b]
    # incoming darts in clockwise order correspond to rev() of the rotation
    if not _cyclic_order(g, v, [rev(a), a_next, rev(c)]):
        return False
    return _cyclic_order(g, u, [b, rev(b_prev), d])


def _reverse_walk(walk: Sequence[int]) -> list[int]:
    return [rev(d) for d in reversed(walk)]


def crosses(g: EmbeddedGraph, P: Sequence[int], Q: Sequence[int], closed: Optional[bool] = None) -> bool:
    """Whether walks ``P`` and ``Q`` cross (either traversal direction, either chirality).

    The configuration is tried with both walks in the first role, so a
    crossing through a shared subwalk is found whichever side ``Q`` enters
    from.  Closed walks are treated cyclically.  ``closed`` forces the
    treatment of both walks; by default it is inferred per walk.
    """
    pc = is_closed_walk(g, P) if closed is None else closed
    qc = is_closed_walk(g, Q) if closed is None else closed
    for A, B, ac, bc in ((list(P), list(Q), pc, qc), (list(Q), list(P), qc, pc)):
        for BB in (B, _reverse_walk(B)):
            for i in range(len(A)):
                for j in range(len(BB)):
                    if _crossing_at(g, A, BB, i, j, ac, bc):
                        return True
    return False


def self_crosses(g: EmbeddedGraph, C: Sequence[int]) -> bool:
    closed = is_closed_walk(g, C)
    for QQ, same_dir in ((list(C), True), (_reverse_walk(C), False)):
        for i in range(len(C)):
            for j in range(len(QQ)):
                if same_dir and i == j:
                    continue
                if _crossing_at(g, C, QQ, i, j, closed, closed):
                    return True
    return False


def is_cycle(g: EmbeddedGraph, C: Sequence[int]) -> bool:
    """Non-self-crossing closed walk using each dart at most once."""
    return is_closed_walk(g, C) and len(set(C)) == len(C) and not self_crosses(g, C)


def is_simple_cycle(g: EmbeddedGraph, C: Sequence[int]) -> bool:
    if not is_closed_walk(g, C):
        return False
    verts = [g.tail[d] for d in C]
    edges = [d >> 1 for d in C]
    return len(set(verts)) == len(verts) and len(set(edges)) == len(edges)


def canonical_cycle(C: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic dart sequence so that its smallest dart comes first."""
    if not C:
        return ()
    k = min(range(len(C)), key=lambda i: C[i])
    return tuple(C[k:]) + tuple(C[:k])


def trace_boundary(g: EmbeddedGraph, darts: Iterable[int]) -> list[tuple[int, ...]]:
    """Split a dart set into closed walks using the face rule restricted to its edges.

    Both darts of every edge touched are admitted to the restricted rotation,
    but only the given darts are emitted.
    """
    dset = set(darts)
    edges = {d >> 1 for d in dset}
    out: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for start in sorted(dset):
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            x = g.next_cw(rev(d))
            while (x >> 1) not in edges:
                x = g.next_cw(x)
            d = x
            if d not in dset:
                raise PlanarError("dart set is not a union of boundary walks")
        out.append(canonical_cycle(walk))
    return out


def boundary_darts(g: EmbeddedGraph, faces: Iterable[int]) -> list[int]:
    """Darts whose face lies in ``faces`` and whose reverse face does not."""
    S = set(faces)
    return [d for d in g.darts() if g.face_of[d] in S and g.face_of[rev(d)] not in S]


# -- contraction ------------------------------------------------------------


def contract_edges(g: EmbeddedGraph, edges: Iterable[int]):
    """Contract ``edges`` ignoring the embedding.

    Returns ``(vertex_weights, new_edges, provenance, edge_map)`` where
    ``new_edges`` is a list of ``(u, v, cost, original_edge)`` with self-loops
    removed, ``provenance[x]`` is the sorted tuple of original vertices merged
    into ``x`` and ``edge_map`` maps surviving original edge ids to new ids.
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        u, v = g.ends[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    roots = sorted({find(v) for v in range(g.n)})
    index = {r: i for i, r in enumerate(roots)}
    provenance = [[] for _ in roots]
    weights = [0] * len(roots)
    for v in range(g.n):
        i = index[find(v)]
        provenance[i].append(v)
        weights[i] += g.vertex_weights[v]
    new_edges = []
    edge_map = {}
    for e, (u, v) in enumerate(g.ends):
        a, b = index[find(u)], index[find(v)]
        if a != b:
            edge_map[e] = len(new_edges)
            new_edges.append((a, b, g.costs[e], e))
    return weights, new_edges, [tuple(p) for p in provenance], edge_map


# -- cuts and cycles ------------------------------------------------------------


def bipartition_to_cut_cycles(g: EmbeddedGraph, side_u: Iterable[int]) -> list[tuple[int, ...]]:
    """Cycles of the dual ``g`` bounding the faces in ``side_u``.

    ``side_u`` lists faces of ``g`` (primal vertices); the outer face must not
    be among them.  The cycles are oriented so the enclosed side is ``side_u``.
    """
    U = set(side_u)
    if g.outer_face in U:
        raise PlanarError("outer face must lie on the V side")
    return trace_boundary(g, boundary_darts(g, U))


def cycles_to_bipartition(g: EmbeddedGraph, cycles: Iterable[Sequence[int]]) -> tuple[frozenset, frozenset]:
    """Faces enclosed (U) and not enclosed (V) by a cycle set."""
    darts = [d for c in cycles for d in c]
    U = enclosed_faces(g, darts)
    V = frozenset(range(g.num_faces)) - U
    return U, V


@dataclass(frozen=True)
class Region:
    """Faces of one region together with its boundary cycles."""

    faces: frozenset
    outer: tuple  # outer boundary cycle (darts)
    holes: tuple = ()  # hole cycles

    def boundary_edges(self) -> set:
        out = {d >> 1 for d in self.outer}
        for h in self.holes:
            out |= {d >> 1 for d in h}
        return out

    def edges(self, g: EmbeddedGraph) -> set:
        inner = {e for e in range(g.m) if g.face_of[2 * e] in self.faces or g.face_of[2 * e + 1] in self.faces}
        return inner | self.boundary_edges()

    def internal_edges(self, g: EmbeddedGraph) -> set:
        bd = self.boundary_edges()
        return {
            e
            for e in range(g.m)
            if g.face_of[2 * e] in self.faces and g.face_of[2 * e + 1] in self.faces and e not in bd
        }

    def vertices(self, g: EmbeddedGraph) -> set:
        vs = set()
        for e in self.edges(g):
            vs.update(g.ends[e])
        return vs


@dataclass(frozen=True)
class RegionTree:
    """Mutually non-crossing cycles arranged by enclosure.

    Node ``i`` corresponds to ``cycles[i]`` in the order given to
    :func:`region_tree`; children are ordered by enclosed weight with ties
    broken by that order.
    """

    cycles: tuple
    enclosed: tuple
    weight: tuple
    parent: tuple
    children: tuple
    preorder: tuple
    root: int

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if ``a`` is ``b`` or a proper ancestor of it."""
        while b is not None:
            if a == b:
                return True
            b = self.parent[b]
        return False

    def depth(self, v: int) -> int:
        k = 0
        while self.parent[v] is not None:
            v = self.parent[v]
            k += 1
        return k

    def region(self, v: int) -> Region:
        faces = set(self.enclosed[v])
        for c in self.children[v]:
            faces -= self.enclosed[c]
        return Region(frozenset(faces), self.cycles[v], tuple(self.cycles[c] for c in self.children[v]))

    def heaviest_hole(self, v: int) -> Optional[int]:
        kids = self.children[v]
        if not kids:
            return None
        return max(kids, key=lambda c: (self.weight[c], -c))


def region_tree(g: EmbeddedGraph, cycles: Sequence[Sequence[int]], check_crossing: bool = True) -> RegionTree:
    """Build the enclosure tree of a cycle set that contains the outer boundary."""
    cycles = [tuple(c) for c in cycles]
    enclosed = [enclosed_faces(g, c) for c in cycles]
    everything = frozenset(range(g.num_faces)) - {g.outer_face}
    roots = [i for i, s in enumerate(enclosed) if s == everything]
    if not roots:
        raise PlanarError("cycle set must contain the outer face boundary")
    root = roots[0]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            a, b = enclosed[i], enclosed[j]
            if a == b:
                raise PlanarError("cycles %d and %d enclose the same faces" % (i, j))
            if a & b and not (a <= b or b <= a):
                raise PlanarError("cycles %d and %d cross" % (i, j))
            if check_crossing and crosses(g, cycles[i], cycles[j]):
                raise PlanarError("cycles %d and %d cross" % (i, j))
    weight = [sum(g.face_weights[f] for f in s) for s in enclosed]
    parent: list = [None] * len(cycles)
    for i in range(len(cycles)):
        if i == root:
            continue
        sups = [j for j in range(len(cycles)) if j != i and enclosed[i] < enclosed[j]]
        parent[i] = min(sups, key=lambda j: len(enclosed[j]))
    children = [[] for _ in cycles]
    for i, p in enumerate(parent):
        if p is not None:
            children[p].append(i)
    for kids in children:
        kids.sort(key=lambda c: (weight[c], c))
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(children[v]))
    return RegionTree(
        tuple(cycles),
        tuple(enclosed),
        tuple(weight),
        tuple(parent),
        tuple(tuple(k) for k in children),
        tuple(order),
        root,
    )


def outer_boundary(g: EmbeddedGraph) -> tuple[int, ...]:
    """Boundary walk of the outer face, oriented to enclose every other face."""
    walk = trace_boundary(g, [d ^ 1 for d in g.faces[g.outer_face] if g.face_of[d ^ 1] != g.outer_face])
    if len(walk) != 1:
        raise PlanarError("outer face boundary is not a single walk")
    return walk[0]


# -- instance files -----------------------------------------------------------


def to_instance(g: EmbeddedGraph, outer_vertex: Optional[int] = None) -> dict:
    """Structured description of a primal graph (vertex weights, edge costs)."""
    inst = {
        "vertices": [{"id": v, "weight": int(g.vertex_weights[v])} for v in range(g.n)],
        "edges": [
            {
                "id": e,
                "u": u,
                "v": v,
                "cost_num": g.costs[e].numerator,
                "cost_den": g.costs[e].denominator,
            }
            for e, (u, v) in enumerate(g.ends)
        ],
        "rotation": {str(v): [[d >> 1, d & 1] for d in g.rotation[v]] for v in range(g.n)},
    }
    if outer_vertex is not None:
        inst["outer_face"] = [[d >> 1, d & 1] for d in g.rotation[outer_vertex]]
    return inst


def from_instance(inst: dict) -> tuple[EmbeddedGraph, Optional[int]]:
    """Inverse of :func:`to_instance`; returns the graph and the outer vertex if given."""
    try:
        verts = sorted(inst["vertices"], key=lambda r: r["id"])
        edges = sorted(inst["edges"], key=lambda r: r["id"])
        if [r["id"] for r in verts] != list(range(len(verts))):
            raise PlanarError("vertex ids must be 0..n-1")
        if [r["id"] for r in edges] != list(range(len(edges))):
            raise PlanarError("edge ids must be 0..m-1")
        n = len(verts)
        rotation = [[] for _ in range(n)]
        for key, lst in inst["rotation"].items():
            rotation[int(key)] = [2 * int(e) + int(end) for e, end in lst]
        g = EmbeddedGraph(
            n,
            [(r["u"], r["v"]) for r in edges],
            [Fraction(r["cost_num"], r["cost_den"]) for r in edges],
            rotation,
            vertex_weights=[int(r["weight"]) for r in verts],
        )
    except (KeyError, TypeError) as exc:
        raise PlanarError("malformed instance: %s" % exc) from exc
    outer = None
    if inst.get("outer_face") is not None:
        target = [2 * int(e) + int(end) for e, end in inst["outer_face"]]
        matches = [v for v in range(g.n) if list(g.rotation[v]) == target]
        if not matches:
            raise PlanarError("outer_face does not match any vertex rotation")
        outer = matches[0]
    return g, outer


def dumps_instance(inst: dict) -> str:
    return json.dumps(inst, indent=1, sort_keys=True) + "\n"


def read_instance(path) -> tuple[EmbeddedGraph, Optional[int]]:
    with open(path) as fh:
        return from_instance(json.load(fh))


def write_instance(path, g: EmbeddedGraph, outer_vertex: Optional[int] = None) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_instance(to_instance(g, outer_vertex)))
