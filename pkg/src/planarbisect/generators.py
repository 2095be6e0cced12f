"""Seeded instance generators.

Every family builds a straight-line drawing and derives clockwise rotations
from it, so the embeddings are planar by construction.  Coordinates never
leave this module.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .planar import EmbeddedGraph, PlanarError, dumps_instance, to_instance

FAMILIES = ("grid", "annulus", "random-triangulation", "nested-cycles")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict = field(default_factory=dict)
    weights: str = "unit"
    costs: str = "unit"
    seed: int = 0


def _from_drawing(points, edges, costs, weights) -> EmbeddedGraph:
    rotation = [[] for _ in points]
    for e, (u, v) in enumerate(edges):
        rotation[u].append(2 * e)
        rotation[v].append(2 * e + 1)
    for v, rot in enumerate(rotation):
        x0, y0 = points[v]

        def angle(d, x0=x0, y0=y0):
            e = d >> 1
            w = edges[e][1] if d & 1 == 0 else edges[e][0]
            x1, y1 = points[w]
            return -math.atan2(y1 - y0, x1 - x0)

        rot.sort(key=angle)
    return EmbeddedGraph(len(points), edges, costs, rotation, vertex_weights=weights)


def _draw(rng, kind, count, lo=1, hi=3):
    if kind == "unit":
        return [1] * count
    if kind == "random":
        return [rng.randint(lo, hi) for _ in range(count)]
    if kind == "zero":
        return [0] * count
    raise PlanarError("unknown distribution %r" % kind)


def grid(rows: int, cols: int, weights="unit", costs="unit", seed=0) -> EmbeddedGraph:
    if rows < 1 or cols < 1:
        raise PlanarError("grid needs rows, cols >= 1")
    rng = random.Random(seed)
    pts = [(c, -r) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return _from_drawing(
        pts, edges, [Fraction(x) for x in _draw(rng, costs, len(edges))], _draw(rng, weights, len(pts))
    )


def annulus(rings: int, spokes: int, weights="unit", costs="unit", seed=0) -> EmbeddedGraph:
    """Concentric rings joined by radial edges, with an empty middle."""
    if rings < 1 or spokes < 3:
        raise PlanarError("annulus needs rings >= 1 and spokes >= 3")
    rng = random.Random(seed)
    pts = []
    for i in range(rings):
        for j in range(spokes):
            a = 2 * math.pi * j / spokes
            pts.append(((i + 1) * math.cos(a), (i + 1) * math.sin(a)))
    edges = []
    for i in range(rings):
        for j in range(spokes):
            v = i * spokes + j
            edges.append((v, i * spokes + (j + 1) % spokes))
            if i + 1 < rings:
                edges.append((v, v + spokes))
    return _from_drawing(
        pts, edges, [Fraction(x) for x in _draw(rng, costs, len(edges))], _draw(rng, weights, len(pts))
    )


def nested_cycles(depth: int, spokes: int = 4, center_weight: int = 8, radial_cost=1, ring_cost=3, seed=0):
    """A heavy hub inside ``depth`` rings; radial cuts are cheap, so low-ratio
    cycles nest around the hub."""
    if depth < 1 or spokes < 3:
        raise PlanarError("nested-cycles needs depth >= 1 and spokes >= 3")
    pts = [(0.0, 0.0)]
    weights = [center_weight]
    for i in range(depth):
        for j in range(spokes):
            a = 2 * math.pi * j / spokes
            pts.append(((i + 1) * math.cos(a), (i + 1) * math.sin(a)))
            weights.append(max(1, center_weight >> (i + 1)))
    edges, costs = [], []
    for j in range(spokes):
        edges.append((0, 1 + j))
        costs.append(Fraction(radial_cost))
    for i in range(depth):
        for j in range(spokes):
            v = 1 + i * spokes + j
            edges.append((v, 1 + i * spokes + (j + 1) % spokes))
            costs.append(Fraction(ring_cost))
            if i + 1 < depth:
                edges.append((v, v + spokes))
                costs.append(Fraction(radial_cost))
    return _from_drawing(pts, edges, costs, weights)


def random_triangulation(n: int, weights="unit", costs="unit", seed=0) -> EmbeddedGraph:
    """Start from a triangle and repeatedly split a seeded choice of inner face."""
    if n < 3:
        raise PlanarError("random triangulation needs n >= 3")
    rng = random.Random(seed)
    pts = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.9)]
    edges = [(0, 1), (1, 2), (2, 0)]
    tris = [(0, 1, 2)]
    while len(pts) < n:
        a, b, c = tris.pop(rng.randrange(len(tris)))
        x = len(pts)
        pts.append(
            (
                (pts[a][0] + pts[b][0] + pts[c][0]) / 3,
                (pts[a][1] + pts[b][1] + pts[c][1]) / 3,
            )
        )
        edges += [(a, x), (b, x), (c, x)]
        tris += [(a, b, x), (b, c, x), (c, a, x)]
    return _from_drawing(
        pts, edges, [Fraction(x) for x in _draw(rng, costs, len(edges))], _draw(rng, weights, len(pts))
    )


def square() -> EmbeddedGraph:
    return grid(2, 2)


def single_loop() -> EmbeddedGraph:
    return EmbeddedGraph(1, [(0, 0)], [1], [[0, 1]], vertex_weights=[1])


def k4() -> EmbeddedGraph:
    pts = [(0.0, 0.0), (2.0, 0.0), (1.0, 2.0), (1.0, 0.7)]
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    return _from_drawing(pts, edges, [1] * 6, [1] * 4)


def generate(spec: GeneratorSpec) -> EmbeddedGraph:
    p = dict(spec.params)
    if spec.family == "grid":
        return grid(p.get("rows", 3), p.get("cols", 3), spec.weights, spec.costs, spec.seed)
    if spec.family == "annulus":
        return annulus(p.get("rings", 2), p.get("spokes", 4), spec.weights, spec.costs, spec.seed)
    if spec.family == "random-triangulation":
        return random_triangulation(p.get("n", 8), spec.weights, spec.costs, spec.seed)
    if spec.family == "nested-cycles":
        return nested_cycles(
            p.get("depth", 3),
            p.get("spokes", 4),
            p.get("center_weight", 8),
            p.get("radial_cost", 1),
            p.get("ring_cost", 3),
            spec.seed,
        )
    raise PlanarError("unknown family %r" % spec.family)


def generate_text(spec: GeneratorSpec) -> str:
    return dumps_instance(to_instance(generate(spec)))
