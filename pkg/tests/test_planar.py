from fractions import Fraction

import pytest
from conftest import dart, faces
from hypothesis import given
from hypothesis import strategies as st

from planarbisect.generators import annulus, grid, k4, random_triangulation, single_loop, square
from planarbisect.oracles import flood_fill_enclosed
from planarbisect.planar import (
    EmbeddedGraph,
    PlanarError,
    bipartition_to_cut_cycles,
    contract_edges,
    crosses,
    cycles_to_bipartition,
    dualize,
    dumps_instance,
    enclosed_faces,
    encloses,
    from_instance,
    primal_and_dual,
    region_tree,
    to_instance,
    with_outer_vertex,
)


def test_counts():
    g = square()
    assert (g.n, g.m, g.num_faces) == (4, 4, 2)
    g = single_loop()
    assert (g.n, g.m, g.num_faces) == (1, 1, 2)


def test_duplicated_dart_rejected():
    g = square()
    rot = [list(r) for r in g.rotation]
    rot[0] = rot[0] + [rot[0][0]]
    with pytest.raises(PlanarError, match="malformed rotation"):
        EmbeddedGraph(g.n, g.ends, g.costs, rot)


def test_nonplanar_rotation_rejected():
    g = k4()
    rot = [list(r) for r in g.rotation]
    rot[3] = [rot[3][0], rot[3][2], rot[3][1]]
    with pytest.raises(PlanarError, match="non-planar"):
        EmbeddedGraph(g.n, g.ends, g.costs, rot)


def test_dual_shapes():
    d = dualize(square())
    assert (d.n, d.m) == (2, 4)
    assert all(set(e) == {0, 1} for e in d.ends)
    d = dualize(k4())
    assert (d.n, d.m) == (4, 6)


def test_dual_carries_weights_and_costs():
    g = grid(2, 3, weights="random", costs="random", seed=4)
    d = dualize(g)
    assert sorted(d.face_weights) == sorted(g.vertex_weights)
    assert d.costs == g.costs


def test_dualize_twice_is_isomorphic():
    g = grid(3, 3)
    dd = dualize(dualize(g))
    assert (dd.n, dd.m, dd.num_faces) == (g.n, g.m, g.num_faces)
    assert sorted(len(r) for r in dd.rotation) == sorted(len(r) for r in g.rotation)
    # edge e joins the same pair of original vertices
    d = dualize(g)
    for e in range(g.m):
        assert sorted(d.face_origin[x] for x in dd.ends[e]) == sorted(g.ends[e])


def test_encloses_single_face():
    _, d, _ = primal_and_dual(square())
    inner = [f for f in range(d.num_faces) if d.face_weights[f] == 1][0]
    C = [d ^ 1 for d in d.faces[inner]]
    assert encloses(d, C, inner)
    assert not encloses(d, C, d.outer_face)
    assert all(not encloses(d, [], f) for f in range(d.num_faces))


def test_nested_cycles_against_flood_fill():
    _, d, _ = primal_and_dual(annulus(3, 4))
    outer = bipartition_to_cut_cycles(d, faces(d, range(8)))
    inner = bipartition_to_cut_cycles(d, faces(d, range(4)))
    middle = set(faces(d, range(4, 8)))
    o = [x for c in outer for x in c]
    i = [x for c in inner for x in c]
    for f in middle:
        assert encloses(d, o, f)
        assert not encloses(d, i, f)
    for c in outer + inner:
        assert enclosed_faces(d, c) == flood_fill_enclosed(d, c)
    assert enclosed_faces(d, o + i) == frozenset(middle)


def test_crossing_at_degree_four_vertex():
    g = grid(3, 3)
    P = [dart(g, 1, 4), dart(g, 4, 7)]
    Q = [dart(g, 3, 4), dart(g, 4, 5)]
    assert crosses(g, P, Q, closed=False)
    P = [dart(g, 1, 4), dart(g, 4, 3)]
    Q = [dart(g, 5, 4), dart(g, 4, 7)]
    assert not crosses(g, P, Q, closed=False)


def test_crossing_through_shared_subwalk():
    g = grid(3, 4)
    # shared middle edge 5-6; P goes left to right, Q top to bottom
    P = [dart(g, 4, 5), dart(g, 5, 6), dart(g, 6, 7)]
    Q = [dart(g, 1, 5), dart(g, 5, 6), dart(g, 6, 10)]
    assert crosses(g, P, Q, closed=False)
    assert crosses(g, Q, P, closed=False)
    Q = [dart(g, 9, 5), dart(g, 5, 6), dart(g, 6, 2)]
    assert crosses(g, P, Q, closed=False)
    Q = [dart(g, 1, 5), dart(g, 5, 6), dart(g, 6, 2)]
    assert not crosses(g, P, Q, closed=False)


def test_contract_edges():
    g = square()
    w, edges, prov, _ = contract_edges(g, [0])
    assert len(w) == 3 and len(edges) == 3
    w, edges, prov, _ = contract_edges(g, range(4))
    assert len(w) == 1 and edges == []
    g = EmbeddedGraph(2, [(0, 1)], [1], [[0], [1]], vertex_weights=[2, 3])
    assert contract_edges(g, [0])[0] == [5]


def test_region_tree_nested_and_sibling_order():
    _, d, _ = primal_and_dual(annulus(3, 4))
    cyc = [bipartition_to_cut_cycles(d, faces(d, range(k)))[0] for k in (12, 8, 4)]
    t = region_tree(d, cyc)
    assert [t.depth(v) for v in t.preorder] == [0, 1, 2]

    g = grid(2, 4, weights="unit")
    g = EmbeddedGraph(g.n, g.ends, g.costs, g.rotation, vertex_weights=[1, 1, 5, 5, 1, 1, 5, 5])
    primal, d, _ = primal_and_dual(g)
    heavy = bipartition_to_cut_cycles(d, faces(d, [3]))[0]
    light = bipartition_to_cut_cycles(d, faces(d, [0]))[0]
    root = bipartition_to_cut_cycles(d, faces(d, range(8)))[0]
    t = region_tree(d, [root, heavy, light])
    assert t.preorder == (0, 2, 1)


def _seven():
    """Two siblings under the root, each with nested children."""
    primal, d, _ = primal_and_dual(grid(4, 4))
    sets = [range(16), [0, 1, 4, 5, 8], [0, 1], [4], [2, 3, 6, 7, 10, 11, 14, 15], [3, 7], [10, 14]]
    return d, [bipartition_to_cut_cycles(d, faces(d, s))[0] for s in sets]


def test_region_tree_preorder_matches_recursive_labeling():
    d, cyc = _seven()
    t = region_tree(d, cyc)

    def rec(v):
        kids = [j for j in range(len(cyc)) if j != v and t.enclosed[j] < t.enclosed[v]]
        direct = [j for j in kids if not any(t.enclosed[j] < t.enclosed[k] for k in kids)]
        direct.sort(key=lambda j: (t.weight[j], j))
        out = [v]
        for j in direct:
            out += rec(j)
        return out

    assert list(t.preorder) == rec(0)
    assert t.preorder == (0, 1, 3, 2, 4, 5, 6)


def test_cut_cycles_round_trip():
    primal, d, anchor = primal_and_dual(square())
    # vertex 0 carries the pendant outer vertex, so stay away from it
    cyc = bipartition_to_cut_cycles(d, faces(d, [2, 3]))
    assert len(cyc) == 1 and len(cyc[0]) == 2
    U, _ = cycles_to_bipartition(d, cyc)
    assert {d.face_origin[f] for f in U} == {2, 3}
    assert bipartition_to_cut_cycles(d, []) == []


@given(st.integers(0, 2**9 - 1), st.integers(0, 50))
def test_cut_cycles_weight(mask, seed):
    g = grid(3, 3, weights="random", seed=seed)
    primal, d, _ = primal_and_dual(g)
    U = [v for v in range(9) if mask >> v & 1]
    cyc = bipartition_to_cut_cycles(d, faces(d, U))
    got, _ = cycles_to_bipartition(d, cyc)
    assert {d.face_origin[f] for f in got} == set(U)
    assert sum(d.face_weights[f] for f in got) == sum(g.vertex_weights[v] for v in U)


@given(st.integers(4, 10), st.integers(0, 1000))
def test_euler_and_face_partition(n, seed):
    g = random_triangulation(n, seed=seed)
    assert g.n - g.m + g.num_faces == 2
    assert sorted(d for f in g.faces for d in f) == list(range(2 * g.m))
    d = dualize(g)
    assert d.n == g.num_faces and d.num_faces == g.n


@given(st.integers(4, 9), st.integers(0, 1000))
def test_face_boundaries_never_cross(n, seed):
    g = random_triangulation(n, seed=seed)
    for a in range(g.num_faces):
        for b in range(a + 1, g.num_faces):
            assert not crosses(g, g.faces[a], g.faces[b])
            assert crosses(g, g.faces[a], g.faces[b]) == crosses(g, g.faces[b], g.faces[a])


def test_outer_vertex_normalization():
    g = square()
    primal, anchor = with_outer_vertex(g)
    assert primal.n == 5 and primal.vertex_weights[anchor] == 0
    with pytest.raises(PlanarError):
        with_outer_vertex(g, 0)


def test_instance_round_trip():
    g = grid(2, 3, weights="random", costs="random", seed=2)
    text = dumps_instance(to_instance(g))
    g2, outer = from_instance(__import__("json").loads(text))
    assert outer is None
    assert dumps_instance(to_instance(g2)) == text
    assert g2.costs == g.costs and all(isinstance(c, Fraction) for c in g2.costs)


def test_malformed_instance():
    with pytest.raises(PlanarError, match="malformed instance"):
        from_instance({"vertices": []})


def _side(pts, v, come, go, q):
    """+1 if ``q`` is left of the turn come->v->go in the straight-line drawing."""
    import math

    def ang(x):
        return math.atan2(pts[x][1] - pts[v][1], pts[x][0] - pts[v][0])

    base = ang(go)
    turn = lambda x: (ang(x) - base) % (2 * math.pi)  # noqa: E731
    return 1 if turn(q) < turn(come) else -1


@given(st.data())
def test_crossing_matches_drawing(data):
    rows, cols = 4, 4
    g = grid(rows, cols)
    pts = [(v % cols, -(v // cols)) for v in range(g.n)]
    nbr = [[g.head[d] for d in g.rotation[v]] for v in range(g.n)]
    X = [data.draw(st.integers(0, g.n - 1))]
    for _ in range(data.draw(st.integers(1, 3))):
        opts = [u for u in nbr[X[-1]] if u not in X]
        if not opts:
            break
        X.append(data.draw(st.sampled_from(opts)))
    s, t = X[0], X[-1]
    starts = [u for u in nbr[s] if u not in X]
    ends = [u for u in nbr[t] if u not in X]
    if len(starts) < 2 or len(ends) < 2:
        return
    a, c = data.draw(st.permutations(starts))[:2]
    b, d = data.draw(st.permutations(ends))[:2]
    inner = [dart(g, X[i], X[i + 1]) for i in range(len(X) - 1)]
    P = [dart(g, a, s)] + inner + [dart(g, t, b)]
    Q = [dart(g, c, s)] + inner + [dart(g, t, d)]
    first = X[1] if len(X) > 1 else b
    last = X[-2] if len(X) > 1 else a
    expect = _side(pts, s, a, first, c) != _side(pts, t, last, b, d)
    assert crosses(g, P, Q, closed=False) == expect
    assert crosses(g, Q, P, closed=False) == expect
