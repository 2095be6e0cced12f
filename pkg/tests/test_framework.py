import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planarbisect.framework import (
    ResourceSkip,
    SimpleGraph,
    bfs_levels,
    contract_to_spanner,
    dp_bipartition,
    lambda_grid,
    lift,
    remove_edges,
    scale_weights,
    slab_spans,
    solve,
    thin,
    tree_decompose,
)
from planarbisect.generators import annulus, grid, random_triangulation, square
from planarbisect.oracles import exact_bipartition, exact_weight_profile
from planarbisect.planar import EmbeddedGraph, PlanarError, primal_and_dual
from planarbisect.spanner import build_spanner


def path(n, cost=1):
    return SimpleGraph(n + 1, tuple((i, i + 1) for i in range(n)), (Fraction(cost),) * n, (1,) * (n + 1))


def test_scaling_formula():
    g = grid(2, 5)
    g = EmbeddedGraph(g.n, g.ends, g.costs, g.rotation, vertex_weights=[57, 100, 100, 100, 100, 100, 100, 100, 100, 143])
    sc = scale_weights(g, Fraction(1, 10))
    assert sc.scaled.vertex_weights[0] == 5
    assert sc.scaled.vertex_weights[-1] == 14
    assert sc.error_per_vertex == 10


def test_scaling_identity_and_zero():
    g = grid(2, 2)
    sc = scale_weights(g, Fraction(1))
    assert sc.scaled.vertex_weights == g.vertex_weights
    g = EmbeddedGraph(g.n, g.ends, g.costs, g.rotation, vertex_weights=[0, 1, 1, 2])
    assert scale_weights(g, Fraction(1, 2)).scaled.vertex_weights[0] == 0
    with pytest.raises(PlanarError):
        scale_weights(EmbeddedGraph(g.n, g.ends, g.costs, g.rotation), Fraction(1, 2))


def test_contract_all_kept_is_identity():
    primal, d, _ = primal_and_dual(grid(3, 3))
    con = contract_to_spanner(primal, range(primal.m))
    assert con.graph.n == primal.n and len(con.graph.edges) == primal.m


def test_contract_to_zero_cost_boundary():
    primal, d, anchor = primal_and_dual(grid(3, 3))
    pendant = primal.m - 1
    con = contract_to_spanner(primal, [pendant])
    # the kept boundary is the zero-cost pendant edge, so only the anchor stays apart
    assert con.graph.n == 2 and con.graph.total_cost == 0
    assert con.provenance[con.vertex_of(0)] == tuple(range(9))
    assert con.provenance[con.vertex_of(anchor)] == (anchor,)


def test_contraction_accounting_mid_pipeline():
    primal, d, anchor = primal_and_dual(grid(3, 4))
    S = build_spanner(d, Fraction(1, 4), Fraction(1, 2))
    con = contract_to_spanner(primal, S.edges)
    assert con.graph.total_cost + con.dropped_cost == S.cost
    U = con.lift([0])
    sol = lift(primal, con, [0])
    assert sol.weight_u == sum(primal.vertex_weights[v] for v in U)


def test_thin_path():
    g = path(5)
    t = thin(g, 2)
    assert sorted(t.class_costs) == [2, 3]
    assert t.cost(g) == 2 and 2 * t.cost(g) <= g.total_cost


def test_thin_beyond_eccentricity_and_single_vertex():
    t = thin(path(3), 10)
    assert t.cost(path(3)) == 0
    single = SimpleGraph(1, (), (), (1,))
    assert thin(single, 3).removed == frozenset()
    with pytest.raises(PlanarError):
        thin(single, 0)


@given(st.integers(5, 12), st.integers(0, 400), st.integers(1, 6))
def test_thinning_properties(n, seed, k):
    g = SimpleGraph.of(random_triangulation(n, costs="random", seed=seed))
    t = thin(g, k)
    assert t.cost(g) * k <= g.total_cost
    assert max(slab_spans(g, t)) <= k + 1
    lv = bfs_levels(g)
    for a, b in g.edges:
        assert abs(lv[a] - lv[b]) <= 1


def test_tree_widths():
    tree = SimpleGraph(5, ((0, 1), (0, 2), (2, 3), (2, 4)), (1,) * 4, (1,) * 5)
    assert tree_decompose(tree).width == 1
    cyc = SimpleGraph(5, tuple((i, (i + 1) % 5) for i in range(5)), (1,) * 5, (1,) * 5)
    assert tree_decompose(cyc).width == 2
    g = SimpleGraph.of(grid(3, 3))
    td = tree_decompose(g)
    td.check(g.n, g.edges)
    assert td.width == 3


def test_dp_examples():
    g = SimpleGraph.of(square())
    td = tree_decompose(g)
    assert dp_bipartition(g, td, 2, 2).cost == 2
    sol = dp_bipartition(g, td, 0, 0)
    assert sol.side_u == frozenset() and sol.cost == 0
    # window [0, W] gives the global minimum cut, which is the empty cut
    assert dp_bipartition(g, td, 0, 4).cost == 0
    assert dp_bipartition(g, td, 1, 3).cost == 2
    with pytest.raises(PlanarError):
        dp_bipartition(g, td, 5, 6)


def test_dp_resource_skip():
    g = SimpleGraph.of(grid(3, 3))
    with pytest.raises(ResourceSkip):
        dp_bipartition(g, tree_decompose(g), 0, 9, state_limit=10)


@given(st.integers(4, 11), st.integers(0, 10_000))
def test_dp_profile_matches_enumeration(n, seed):
    rng = random.Random(seed)
    g = SimpleGraph.of(random_triangulation(n, weights="random", costs="random", seed=seed))
    anchor = rng.choice([None, 0])
    td = tree_decompose(g)
    prof = dp_bipartition(g, td, 0, g.total_weight, anchor, profile_only=True)
    assert prof == exact_weight_profile(g.n, g.edges, g.costs, g.weights, anchor)
    lo = rng.randint(0, g.total_weight)
    hi = rng.randint(lo, g.total_weight)
    if any(lo <= w <= hi for w in prof):
        sol = dp_bipartition(g, td, lo, hi, anchor)
        ref = exact_bipartition(g.n, g.edges, g.costs, g.weights, lo, hi, anchor)
        assert sol.cost == ref.cost and lo <= sol.weight_u <= hi
        assert g.cut_cost(sol.side_u) == sol.cost
        assert anchor is None or anchor not in sol.side_u


def test_lift_identity_and_single_vertex():
    primal, _, anchor = primal_and_dual(grid(2, 2))
    sol = lift(primal, None, {1, 2})
    assert sol.side_u == {1, 2} and sol.cost == SimpleGraph.of(primal).cut_cost({1, 2})
    con = contract_to_spanner(primal, [])
    assert con.graph.n == 1
    assert lift(primal, con, []).cost == 0


def test_lambda_grid():
    grid_ = lambda_grid([Fraction(0), Fraction(1), Fraction(2)], 4)
    assert grid_[0] == Fraction(1, 4)
    assert all(b == 2 * a for a, b in zip(grid_, grid_[1:]))
    assert grid_[-1] <= Fraction(3, 2) < 2 * grid_[-1]
    assert lambda_grid([Fraction(0)], 4) == [0]


def test_solve_square():
    sol, rep = solve(square(), Fraction(1, 2), Fraction(3, 10))
    assert sol.cost == 2 and sol.balance == Fraction(1, 2)
    assert rep.best_lambda is not None and rep.lambdas


def test_solve_zero_side():
    sol, _ = solve(square(), 0, Fraction(3, 10))
    assert sol.side_u == frozenset() and sol.cost == 0


@pytest.mark.parametrize("g", [grid(3, 3), grid(3, 4), annulus(2, 4)])
def test_solve_small_eps_against_oracle(g):
    b, eps = Fraction(1, 2), Fraction(1, 5)
    primal, _, anchor = primal_and_dual(g)
    W = sum(g.vertex_weights)
    sol, rep = solve(g, b, eps)
    lo, hi = rep.guaranteed_window
    assert lo <= sol.balance <= hi
    from planarbisect.spanner import target_window

    wlo, whi = target_window(W, b)
    opt = exact_bipartition(primal.n, primal.ends, primal.costs, primal.vertex_weights, wlo, whi, anchor).cost
    assert sol.cost <= (1 + 4 * eps) * opt
    for r in rep.lambdas:
        if r.get("status") == "ok":
            assert r["thinning_cost"] * r["k"] <= r["contracted_cost"]
            assert r["lifted_cost"] <= r["dp_cost"] + r["thinning_cost"]


def test_solve_stages():
    sol, rep = solve(grid(3, 3), Fraction(1, 2), Fraction(1, 2), stage="spanner")
    assert sol is None and all("spanner_cost" in r and "k" not in r for r in rep.lambdas)
    sol, rep = solve(grid(3, 3), Fraction(1, 2), Fraction(1, 2), stage="thin")
    assert sol is None and all("thinning_cost" in r for r in rep.lambdas)


def test_solve_rejects_bad_input():
    with pytest.raises(PlanarError):
        solve(square(), Fraction(2), Fraction(1, 2))
    with pytest.raises(PlanarError):
        solve(square(), Fraction(1, 2), 0)
    g = square()
    with pytest.raises(PlanarError):
        solve(EmbeddedGraph(g.n, g.ends, g.costs, g.rotation), Fraction(1, 2), Fraction(1, 2))


def test_solve_deterministic():
    a = solve(grid(3, 3), Fraction(1, 2), Fraction(1, 4))[1].as_dict()
    b = solve(grid(3, 3), Fraction(1, 2), Fraction(1, 4))[1].as_dict()
    assert a == b


def test_remove_edges():
    g = path(3)
    h = remove_edges(g, {1})
    assert h.edges == ((0, 1), (2, 3))
