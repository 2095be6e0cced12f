"""Two-sheeted cyclic cover of a region with holes.

The region is cut along a curve from its outer boundary to its largest hole.
Combinatorially the curve is a path in the face-adjacency graph; the edges it
crosses inside the region form the set ``X``.  An edge of ``X`` joins the two
sheets, every other edge stays on its sheet.  A closed walk downstairs lifts
to a closed walk exactly when it crosses ``X`` an even number of times, which
is when it winds around the largest hole an even number of times.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .planar import EmbeddedGraph, PlanarError, Region, enclosed_faces


@dataclass(frozen=True)
class DoubleCover:
    graph: EmbeddedGraph  # the base graph G
    region: Region
    hole: int  # index into region.holes
    cut: frozenset  # X, edge ids of G
    cut_path: tuple  # faces of G visited by the cutting curve
    vertices: tuple  # region vertices, sorted; vertex (v, s) of R2 is 2 * index + s
    edges: tuple  # region edges, sorted; edge copy (e, s) of R2 is 2 * index + s
    cover: EmbeddedGraph
    boundary: dict  # R2 face -> "outer" | "hole" | ("other", j) | "inner"

    @property
    def largest_hole(self) -> tuple:
        return self.region.holes[self.hole]

    def vertex(self, v: int, sheet: int) -> int:
        return 2 * self.vertices.index(v) + sheet

    def project_vertex(self, x: int) -> tuple[int, int]:
        return self.vertices[x >> 1], x & 1

    def project_dart(self, d2: int) -> int:
        e = self.edges[d2 >> 2]
        return 2 * e + (d2 & 1)

    def project_edge(self, e2: int) -> int:
        return self.edges[e2 >> 1]

    def lift_dart(self, d: int, sheet: int) -> int:
        """Lift of dart ``d`` of G whose tail is on ``sheet``."""
        e = d >> 1
        i = self.edges.index(e)
        swap = 1 if e in self.cut else 0
        copy = sheet if d & 1 == 0 else sheet ^ swap
        return 2 * (2 * i + copy) + (d & 1)


def largest_hole(g: EmbeddedGraph, region: Region, weights: Optional[Sequence[int]] = None) -> int:
    """Index of the heaviest hole; ties go to the first one listed."""
    if not region.holes:
        raise PlanarError("cover undefined: region has no holes")
    w = g.face_weights if weights is None else weights
    sizes = [sum(w[f] for f in enclosed_faces(g, h)) for h in region.holes]
    return max(range(len(sizes)), key=lambda i: (sizes[i], -i))


def cut_set(g: EmbeddedGraph, region: Region, hole: int) -> tuple[frozenset, tuple]:
    """Edges crossed by a shortest face path from outside the region to inside
    the chosen hole, restricted to region edges."""
    outside = frozenset(range(g.num_faces)) - enclosed_faces(g, region.outer)
    target = enclosed_faces(g, region.holes[hole])
    others = set()
    for j, h in enumerate(region.holes):
        if j != hole:
            others |= enclosed_faces(g, h)
    start = min(outside)
    prev: dict = {start: None}
    queue = deque([start])
    adj = g.face_adjacency()
    end = None
    while queue:
        f = queue.popleft()
        if f in target:
            end = f
            break
        for e, h in sorted(adj[f]):
            if h in prev or h in others:
                continue
            prev[h] = (f, e)
            queue.append(h)
    if end is None:
        raise PlanarError("largest hole unreachable from the outer boundary")
    path, crossed = [end], []
    f = end
    while prev[f] is not None:
        f, e = prev[f]
        crossed.append(e)
        path.append(f)
    path.reverse()
    region_edges = region.edges(g)
    counts: dict = {}
    for e in crossed:
        if e in region_edges:
            counts[e] = counts.get(e, 0) + 1
    return frozenset(e for e, k in counts.items() if k % 2), tuple(path)


def build_double_cover(g: EmbeddedGraph, region: Region, hole: Optional[int] = None) -> DoubleCover:
    if not region.holes:
        raise PlanarError("cover undefined: region has no holes")
    i = largest_hole(g, region) if hole is None else hole
    X, path = cut_set(g, region, i)
    edges = tuple(sorted(region.edges(g)))
    verts = tuple(sorted({v for e in edges for v in g.ends[e]}))
    vidx = {v: k for k, v in enumerate(verts)}
    eidx = {e: k for k, e in enumerate(edges)}
    ends2, costs2 = [], []
    for e in edges:
        u, v = g.ends[e]
        swap = 1 if e in X else 0
        for s in (0, 1):
            ends2.append((2 * vidx[u] + s, 2 * vidx[v] + (s ^ swap)))
            costs2.append(g.costs[e])
    rot2 = [[] for _ in range(2 * len(verts))]
    for v in verts:
        darts = [d for d in g.rotation[v] if (d >> 1) in eidx]
        for s in (0, 1):
            out = []
            for d in darts:
                e = d >> 1
                swap = 1 if e in X else 0
                copy = s if d & 1 == 0 else s ^ swap
                out.append(2 * (2 * eidx[e] + copy) + (d & 1))
            rot2[2 * vidx[v] + s] = out
    weights2 = [0] * (2 * len(verts))
    try:
        cover = EmbeddedGraph(2 * len(verts), ends2, costs2, rot2, vertex_weights=weights2)
    except PlanarError as exc:
        raise PlanarError("double cover is not planar: %s" % exc) from exc
    D = DoubleCover(g, region, i, X, path, verts, edges, cover, {})
    D.boundary.update(_classify_faces(D))
    outer = [f for f, kind in D.boundary.items() if kind == "outer"]
    if outer:
        object.__setattr__(D, "cover", _with_outer(cover, outer[0]))
    return D


def _with_outer(c: EmbeddedGraph, f: int) -> EmbeddedGraph:
    return EmbeddedGraph(c.n, c.ends, c.costs, c.rotation, vertex_weights=c.vertex_weights, outer_face=f)


def _classify_faces(D: DoubleCover) -> dict:
    g, R = D.graph, D.region
    outer_edges = {d >> 1 for d in R.outer}
    hole_edges = [{d >> 1 for d in h} for h in R.holes]
    out = {}
    for f, walk in enumerate(D.cover.faces):
        es = {D.project_edge(d >> 1) for d in walk}
        if not es:
            out[f] = "inner"
        elif es <= outer_edges and all(g.face_of[D.project_dart(d)] not in R.faces for d in walk):
            out[f] = "outer"
        else:
            for j, he in enumerate(hole_edges):
                if es <= he and all(g.face_of[D.project_dart(d)] not in R.faces for d in walk):
                    out[f] = "hole" if j == D.hole else ("other", j)
                    break
            else:
                out[f] = "inner"
    return out


def lift_walk(D: DoubleCover, walk: Sequence[int], sheet: int = 0) -> tuple[int, ...]:
    """Unique lift of a walk of G starting on ``sheet`` (dart ids of the cover)."""
    edges = set(D.edges)
    out = []
    s = sheet
    for d in walk:
        if (d >> 1) not in edges:
            raise PlanarError("walk leaves the region at edge %d" % (d >> 1))
        out.append(D.lift_dart(d, s))
        if (d >> 1) in D.cut:
            s ^= 1
    return tuple(out)


def end_sheet(D: DoubleCover, walk: Sequence[int], sheet: int = 0) -> int:
    return (sheet + sum(1 for d in walk if (d >> 1) in D.cut)) % 2


def project_walk(D: DoubleCover, walk2: Sequence[int]) -> tuple[int, ...]:
    return tuple(D.project_dart(d) for d in walk2)


def project_closed_walk(D: DoubleCover, walk2: Sequence[int]) -> tuple[int, ...]:
    c = D.cover
    if walk2 and c.head[walk2[-1]] != c.tail[walk2[0]]:
        raise PlanarError("walk is not closed in the cover")
    return project_walk(D, walk2)


def encloses_largest_hole(D: DoubleCover, walk: Sequence[int]) -> bool:
    """Parity test: does ``walk`` (in G) enclose the faces inside the largest hole?"""
    inside = enclosed_faces(D.graph, D.largest_hole)
    got = enclosed_faces(D.graph, walk)
    return bool(inside) and bool(inside & got)
