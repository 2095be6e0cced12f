import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planarbisect.generators import annulus, grid, nested_cycles, random_triangulation, square
from planarbisect.oracles import all_pairs_distances
from planarbisect.planar import EmbeddedGraph, Region, crosses, outer_boundary, primal_and_dual
from planarbisect.skeleton import build_skeleton
from planarbisect.spanner import (
    TAGS,
    boundary_spanner,
    build_spanner,
    component_spanner,
    decompose_cycle,
    greedy_spanner,
    restricted_best,
    stretch_violations,
    target_window,
    verify_containment,
)


def disk(g):
    """``g`` with its longest face as the outer face, and the region of all other faces."""
    out = max(range(g.num_faces), key=lambda f: (len(g.faces[f]), -f))
    h = EmbeddedGraph(g.n, g.ends, g.costs, g.rotation, face_weights=[1] * g.num_faces, outer_face=out)
    return h, Region(frozenset(range(h.num_faces)) - {out}, outer_boundary(h))


def apsp_check(g, H, terms, eps, allowed):
    """Independent Floyd-Warshall check of the stretch bound."""
    def arcs(es):
        return [(u, v, g.costs[e]) for e in es for u, v in (g.ends[e], g.ends[e][::-1])]

    full = all_pairs_distances(g.n, arcs(allowed))
    sub = all_pairs_distances(g.n, arcs(H))
    for u in terms:
        for v in terms:
            if full[u][v] != math.inf:
                assert sub[u][v] <= (1 + eps) * full[u][v]


def test_no_interior_keeps_boundary():
    g, R = disk(grid(2, 2))
    H = boundary_spanner(g, R, Fraction(1, 4))
    assert H == {d >> 1 for d in R.outer}


def test_grid_disk_quarter():
    g, R = disk(grid(5, 5))
    eps = Fraction(1, 4)
    H = boundary_spanner(g, R, eps)
    terms = sorted({g.tail[d] for d in R.outer})
    assert len(terms) * (len(terms) - 1) // 2 == 120
    apsp_check(g, H, terms, eps, R.edges(g))


def test_infinite_eps_keeps_boundary():
    g, R = disk(grid(4, 4))
    assert boundary_spanner(g, R, math.inf) == {d >> 1 for d in R.outer}


def test_component_spanner_single_cycle_matches_boundary():
    g, R = disk(grid(3, 4))
    A = {d >> 1 for d in R.outer}
    assert component_spanner(g, A, Fraction(1, 4), R.edges(g)) == boundary_spanner(g, R, Fraction(1, 4))


def test_component_spanner_covering_everything():
    g, _ = disk(grid(3, 3))
    assert component_spanner(g, range(g.m), Fraction(1, 2)) == frozenset(range(g.m))


def test_component_spanner_two_holes_joined():
    g = annulus(3, 4, costs="random", seed=2)
    A = {e for e, (u, v) in enumerate(g.ends) if (u < 4 and v < 4) or (u >= 8 and v >= 8)}
    A |= {next(e for e, (u, v) in enumerate(g.ends) if {u, v} == {0, 4}), next(e for e, (u, v) in enumerate(g.ends) if {u, v} == {4, 8})}
    eps = Fraction(1, 5)
    H = component_spanner(g, A, eps)
    terms = sorted({v for e in A for v in g.ends[e]})
    apsp_check(g, H, terms, eps, range(g.m))


@given(st.integers(5, 10), st.integers(0, 500), st.sampled_from([Fraction(1, 10), Fraction(1, 4), Fraction(1)]))
def test_greedy_stretch(n, seed, eps):
    g = random_triangulation(n, costs="random", seed=seed)
    g, R = disk(g)
    H = boundary_spanner(g, R, eps)
    terms = sorted({g.tail[d] for d in R.outer})
    assert not stretch_violations(g, H, terms, eps, R.edges(g))
    apsp_check(g, H, terms, eps, R.edges(g))


def test_greedy_contains_base():
    g = grid(3, 3)
    assert {0, 1} <= greedy_spanner(g, {0, 1}, [0, 8], Fraction(1, 2))


def test_trivial_skeleton_spanner():
    _, d, _ = primal_and_dual(grid(3, 3))
    S = build_spanner(d, Fraction(1, 1000), Fraction(1, 2))
    assert S.skeleton.ids == (0,)
    assert not S.tag_edges["cover"] and not S.tag_edges["enclosing-cycle"] and not S.tag_edges["cover-shortcut"]
    assert S.edges == S.tag_edges["skeleton"] | S.tag_edges["hole-free"]


def test_all_tags_populated_on_annulus():
    _, d, _ = primal_and_dual(annulus(4, 4))
    S = build_spanner(d, Fraction(1, 4), Fraction(1, 4))
    assert all(S.tag_edges[t] for t in TAGS)
    assert sum(S.tag_costs().values()) == S.cost


def test_zero_cost_graph():
    g = grid(3, 3)
    g = EmbeddedGraph(g.n, g.ends, [0] * g.m, g.rotation, vertex_weights=g.vertex_weights)
    _, d, _ = primal_and_dual(g)
    assert build_spanner(d, Fraction(0), Fraction(1, 2)).cost == 0


def test_containment_with_every_edge():
    primal, d, anchor = primal_and_dual(grid(3, 3))
    W = sum(primal.vertex_weights)
    lo, hi = target_window(W, Fraction(1, 2))
    sol, U = restricted_best(primal, anchor, set(range(primal.m)), lo, hi)
    rep = verify_containment(primal, anchor, range(primal.m), Fraction(1, 2), Fraction(1, 20))
    assert sol.cost == rep.opt and lo <= sol.weight_u <= hi
    assert rep.status == "pass" and rep.cost <= rep.opt


@pytest.mark.parametrize("eps", [Fraction(3, 10), Fraction(1, 2)])
def test_containment_grid_four(eps):
    primal, d, anchor = primal_and_dual(grid(4, 4))
    W = sum(primal.vertex_weights)
    lam = Fraction(4, W)
    S = build_spanner(d, lam, eps)
    assert verify_containment(primal, anchor, S.edges, Fraction(1, 2), eps).status == "pass"


@pytest.mark.parametrize("g", [annulus(2, 4), annulus(3, 4), nested_cycles(2), grid(3, 4)])
def test_exact_window_containment(g):
    # tighter than the lemma's window: restricted to the exact b-window
    primal, d, anchor = primal_and_dual(g)
    W = sum(primal.vertex_weights)
    lo, hi = target_window(W, Fraction(1, 2))
    eps = Fraction(1, 4)
    opt = restricted_best(primal, anchor, set(range(primal.m)), lo, hi)[0].cost
    S = build_spanner(d, opt / W, eps)
    full = restricted_best(primal, anchor, S.edges, lo, hi)[0].cost
    assert full <= (1 + 4 * eps) * opt
    # removing any provenance class can only make the restricted optimum worse
    for tag in TAGS:
        try:
            pruned = restricted_best(primal, anchor, S.without(tag), lo, hi)[0].cost
        except Exception:
            continue
        assert pruned >= full


def test_containment_skips_large():
    primal, d, anchor = primal_and_dual(grid(5, 5))
    assert verify_containment(primal, anchor, range(primal.m), Fraction(1, 2), Fraction(1, 2)).status == "skipped"


def test_decompose_cycle():
    _, d, _ = primal_and_dual(grid(3, 3))
    sk = build_skeleton(d, Fraction(1, 2), Fraction(1, 2))
    cycles = sk.cycle_list()
    for f in range(d.num_faces):
        if f == d.outer_face:
            continue
        K = list(d.faces[f])
        pieces = decompose_cycle(d, K, cycles)
        assert [x for p in pieces for x in p] in [K[i:] + K[:i] for i in range(len(K))]
        if len(pieces) > 1:
            crossed = [C for C in cycles if crosses(d, K, C)]
            for p in pieces:
                assert not any(crosses(d, list(p), C, closed=False) for C in crossed)
    assert decompose_cycle(d, cycles[0], [cycles[0]]) == [tuple(cycles[0])]
