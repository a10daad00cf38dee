import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ftoracle.generators import random_rooted_digraph
from ftoracle.graph import Graph, INF
from ftoracle.ssrp import (EpsDist, bfs_tree, chain_to_json, compute_b0, compute_bk, k_relevant_pairs,
                           make_context, num_levels, ssrp_hitting_chain, verify_ssrp_hitting)


def _path(n):
    return Graph(n, [(i, i + 1, 1) for i in range(n - 1)])


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=2, max_size=6))
def test_epsdist_order_matches_small_epsilon(items):
    n = 20
    eps = Fraction(1, n + 1)
    a = [EpsDist(u, k) for u, k in items]
    assert sorted(a) == sorted(a, key=lambda x: x.value(eps))
    s = a[0] + a[1]
    assert s.value(eps) == a[0].value(eps) + a[1].value(eps)


def test_num_levels():
    assert num_levels(1) == (0, 0)
    assert num_levels(16) == (2, 4)
    assert num_levels(40) == (2, 5)


def test_bfs_tree_smallest_parent():
    g = Graph(4, [(0, 2, 1), (0, 1, 1), (2, 3, 1), (1, 3, 1)])
    parent, depth = bfs_tree(g, 0)
    assert parent == [-1, 0, 0, 1] and depth == [0, 1, 1, 2]


def test_separator_on_path():
    ctx = make_context(_path(9), 0)
    assert ctx.separator_ok()
    assert ctx.S | ctx.T == frozenset(range(9)) and ctx.S & ctx.T == {ctx.t}
    assert ctx.P == tuple(range(ctx.t + 1))


def test_separator_star_and_infeasible():
    star = Graph(7, [(0, v, 1) for v in range(1, 7)] + [(v, 0, 1) for v in range(1, 7)])
    ctx = make_context(star, 0)
    assert ctx.t == 0 and ctx.separator_ok()
    # n = 4 forces |S| = |T| = 2, but they share t, so |S| + |T| = 5
    g = Graph(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1)])
    with pytest.raises(ValueError, match="separator"):
        make_context(g, 0)


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        make_context(Graph(2, [(0, 1, 2)]), 0)
    with pytest.raises(ValueError, match="unreachable"):
        make_context(Graph(3, [(0, 1, 1)]), 0)


def test_k_relevant_pairs_require_finite_distance():
    ctx = make_context(_path(9), 0)
    # G_P drops the path edges from s to t, so nothing on P reaches T except t itself
    for k in range(3):
        for u, v in k_relevant_pairs(ctx, k):
            assert ctx.dist_gp()[u, v] != INF


@pytest.mark.parametrize("seed", range(6))
def test_chain_hits_every_relevant_pair(seed):
    g = random_rooted_digraph(40, 80, seed)
    ctx = make_context(g, 0)
    stats = []
    levels = ssrp_hitting_chain(ctx, stats)
    assert len(levels) == num_levels(40)[1] + 1
    for k, B in enumerate(levels):
        assert verify_ssrp_hitting(ctx, B, k).ok
    assert [s["k"] for s in stats] == list(range(len(levels)))


def test_empty_pivots_fail_when_pairs_exist():
    for seed in range(20):
        ctx = make_context(random_rooted_digraph(30, 45, seed), 0)
        if k_relevant_pairs(ctx, 0):
            assert not verify_ssrp_hitting(ctx, [], 0).ok
            return
    pytest.skip("no relevant pairs in sampled graphs")


def test_deterministic_output():
    g = random_rooted_digraph(32, 64, 3)
    a = chain_to_json(make_context(g, 0), ssrp_hitting_chain(make_context(g, 0)))
    b = chain_to_json(make_context(g, 0), ssrp_hitting_chain(make_context(g, 0)))
    assert a == b
    ctx = make_context(g, 0)
    b0 = compute_b0(ctx, 1)
    assert compute_bk(ctx, b0[-1], 2) == compute_bk(ctx, b0[-1], 2)
