from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planarbisect.generators import annulus, grid, nested_cycles, random_triangulation, square
from planarbisect.planar import EmbeddedGraph, PlanarError, crosses, enclosed_faces, primal_and_dual
from planarbisect.skeleton import (
    InvariantViolation,
    build_skeleton,
    charge_bound,
    charge_counts,
    check_skeleton,
    drop_cycle,
    simulate_splices,
    verify_no_low_ratio_remaining,
)

LAMS = [Fraction(1, 8), Fraction(1, 2), Fraction(1), Fraction(2)]


def dual_of(g):
    return primal_and_dual(g)[1]


def test_tiny_lambda_gives_outer_boundary_only():
    d = dual_of(grid(3, 3))
    sk = build_skeleton(d, Fraction(1, 1000), Fraction(1, 2))
    assert sk.ids == (0,)
    assert sk.ptr_trace == [0]
    assert charge_counts(sk) == [0] * d.num_faces
    rep = verify_no_low_ratio_remaining(d, sk)
    assert rep.status == "pass" and rep.checked == 0


def test_single_face_cycle():
    # primal digon with the weight on vertex 1; the pendant outer vertex hangs off vertex 0
    g = EmbeddedGraph(2, [(0, 1), (0, 1)], [1, 1], [[0, 2], [3, 1]], vertex_weights=[0, 1])
    d = dual_of(g)
    sk = build_skeleton(d, Fraction(1), Fraction(1, 2))
    assert sk.ids == (0, 1)
    assert sk.cost() == 2
    assert all(not s.removed for s in sk.splices)
    counts = charge_counts(sk)
    inside = enclosed_faces(d, sk.cycles[1])
    assert all(counts[f] == (1 if f in inside else 0) for f in range(d.num_faces))


def test_splice_removes_middle_of_ten_nine_eight():
    parent = [None, 0, 1, 2]
    weight = [40, 10, 9, 8]
    assert simulate_splices(parent, weight, [0, 1, 2, 3], 3) == (1, (2,))
    # without the 2x slack nothing would be removed
    assert simulate_splices(parent, [40, 17, 16, 8], [0, 1, 2, 3], 3) == (3, ())


@pytest.mark.parametrize("g", [nested_cycles(2), nested_cycles(3), annulus(2, 4), grid(3, 3), square()])
@pytest.mark.parametrize("lam", LAMS)
def test_splices_follow_reference(g, lam):
    sk = build_skeleton(dual_of(g), lam, Fraction(1, 2))
    assert len(sk.contexts) == len(sk.splices) == len(sk.ptr_trace)
    for (pre, parent, weight), s, ptr in zip(sk.contexts, sk.splices, sk.ptr_trace):
        assert s.leafward == ptr
        assert simulate_splices(parent, weight, list(pre), ptr) == (s.rootward, s.removed)
    assert sk.ptr_trace[-1] == 0


@pytest.mark.parametrize("g", [nested_cycles(2), nested_cycles(3), annulus(2, 4), grid(3, 3)])
@pytest.mark.parametrize("lam", LAMS)
def test_invariants(g, lam):
    d = dual_of(g)
    eps = Fraction(1, 2)
    sk = build_skeleton(d, lam, eps)
    check_skeleton(sk)
    W = sum(d.face_weights)
    assert max(charge_counts(sk)) <= charge_bound(W)
    assert sk.cost() <= lam / eps * W * charge_bound(W)
    cyc = sk.cycle_list()
    for i in range(len(cyc)):
        for j in range(i + 1, len(cyc)):
            assert not crosses(d, cyc[i], cyc[j])
    for ptr, suffix in sk.snapshots:
        final = [sk.ids[v] for v in sk.tree.preorder]
        assert ptr not in final or tuple(final[final.index(ptr):]) == suffix


def test_deep_nesting_charge():
    g = nested_cycles(3, center_weight=32)
    d = dual_of(g)
    W = sum(d.face_weights)
    sk = build_skeleton(d, Fraction(2), Fraction(1, 2))
    assert max(charge_counts(sk)) <= charge_bound(W)
    assert charge_bound(64) == 14


@pytest.mark.parametrize("g", [nested_cycles(2), annulus(2, 4), grid(3, 3), square()])
def test_no_low_ratio_remaining(g):
    d = dual_of(g)
    for lam in LAMS:
        sk = build_skeleton(d, lam, Fraction(1, 2))
        assert verify_no_low_ratio_remaining(d, sk).status == "pass"


def test_dropping_a_cycle_is_caught():
    d = dual_of(grid(3, 3))
    sk = build_skeleton(d, Fraction(1, 2), Fraction(1, 2))
    assert len(sk.ids) > 1
    bad = drop_cycle(sk, sk.ids[-1])
    rep = verify_no_low_ratio_remaining(d, bad)
    assert rep.status == "fail" and rep.witness is not None
    with pytest.raises(PlanarError):
        drop_cycle(sk, 0)


def test_large_graph_skips_remaining_check():
    d = dual_of(nested_cycles(3))
    sk = build_skeleton(d, Fraction(1, 8), Fraction(1, 2))
    assert verify_no_low_ratio_remaining(d, sk).status == "skipped"


def test_insertion_cap():
    d = dual_of(grid(3, 3))
    with pytest.raises(InvariantViolation):
        build_skeleton(d, Fraction(2), Fraction(1, 2), max_insertions=0)


def test_bad_parameters():
    d = dual_of(square())
    with pytest.raises(PlanarError):
        build_skeleton(d, Fraction(-1), Fraction(1, 2))


@given(st.integers(4, 8), st.integers(0, 200), st.sampled_from(LAMS))
def test_random_triangulations(n, seed, lam):
    d = dual_of(random_triangulation(n, weights="random", costs="random", seed=seed))
    sk = build_skeleton(d, lam, Fraction(1, 2))
    W = sum(d.face_weights)
    assert max(charge_counts(sk)) <= charge_bound(W)
    for (pre, parent, weight), s in zip(sk.contexts, sk.splices):
        assert simulate_splices(parent, weight, list(pre), s.leafward) == (s.rootward, s.removed)


def test_deterministic():
    d = dual_of(nested_cycles(2))
    a = build_skeleton(d, Fraction(1), Fraction(1, 2))
    b = build_skeleton(d, Fraction(1), Fraction(1, 2))
    assert a.cycles == b.cycles and a.splices == b.splices
