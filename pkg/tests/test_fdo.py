import itertools
import warnings
from fractions import Fraction

import pytest

from ftoracle.dso import ReferenceDso
from ftoracle.fdo import (FdoOracle, build_fdo, check_sparse_regime, derandomized_pivots, fdo_pivots,
                          near_linear_eps, parse_fraction, pivot_level, query_fdo, query_fdo_vertex,
                          sample_pivots)
from ftoracle.generators import cycle_with_chords, random_digraph, random_strongly_connected
from ftoracle.graph import INF, Graph, apsp
from ftoracle.hdph import PivotHierarchy, hdph

from conftest import nx_diameter

pytestmark = pytest.mark.filterwarnings("ignore:eps\\*D/2")


def _oracle(g, eps, B, vf=False):
    a = apsp(g)
    return build_fdo(g, eps, B, ReferenceDso(g, a), a, vertex_failures=vf)


def test_parse_fraction():
    assert parse_fraction("1/2") == Fraction(1, 2)
    assert parse_fraction(0.25) == Fraction(1, 4)
    assert parse_fraction(3) == 3


def test_sample_pivots_reproducible_and_probability_one():
    g = random_digraph(50, 100, 0)
    assert sample_pivots(g, 10, 1, 7) == sample_pivots(g, 10, 1, 7)
    import math
    assert sample_pivots(g, 2 * math.log(50), 2, 0) == set(range(50))
    with pytest.raises(ValueError):
        sample_pivots(g, 1, 3, 0)


def test_sample_pivots_size_concentrates():
    import math
    g = Graph(1000, [])
    target = 1000 * 2 * math.log(1000) / 100
    good = sum(0.5 * target <= len(sample_pivots(g, 100, 2, seed)) <= 2 * target for seed in range(100))
    assert good >= 95


def test_pivot_level_arithmetic():
    h = PivotHierarchy(Fraction(2), [frozenset()] * 7)
    assert pivot_level(h, Fraction(1, 2), 63) == 3  # 8 < 15.75 <= 16
    assert pivot_level(h, Fraction(1, 2), 9) == 1   # 2 < 2.25 <= 4
    assert pivot_level(h, Fraction(1, 2), 17) == 2  # 4 < 4.25
    with pytest.raises(ValueError):
        pivot_level(h, Fraction(1, 2), 4)


def test_derandomized_pivots_on_cycle():
    n = 64
    g = Graph(n, [(i, (i + 1) % n, 1) for i in range(n)])
    a = apsp(g)
    h = hdph(a, ReferenceDso(g, a), 2, max_level=3)
    assert derandomized_pivots(g, h, Fraction(1, 2)) == set(h.levels[3])
    with pytest.raises(ValueError):
        derandomized_pivots(g, PivotHierarchy(Fraction(3), h.levels), Fraction(1, 2))


def test_empty_pivots_flat_answer():
    g = random_strongly_connected(12, 40, 1)
    o = _oracle(g, Fraction(1, 2), [])
    assert o.X == {}
    for e in range(g.m):
        if e not in o.Y:
            assert query_fdo(o, e) == Fraction(3, 2) * o.diam0


def test_cycle_all_bridges(cycle4):
    o = _oracle(cycle4, Fraction(1, 2), [0, 2])
    assert o.Y == frozenset(range(4))
    assert all(query_fdo(o, e) == INF for e in range(4))


def test_not_strongly_connected_rejected():
    with pytest.raises(ValueError):
        _oracle(Graph(3, [(0, 1, 1), (1, 2, 1)]), Fraction(1, 2), [0])


def test_X_matches_exhaustive_pivot_sweep():
    g = random_strongly_connected(20, 70, 3)
    a = apsp(g)
    dso = ReferenceDso(g, a)
    B = list(range(g.n))
    o = build_fdo(g, Fraction(1, 4), B, dso, a)
    H = {e for b in B for e in a.tree_edges(b)}
    expect = {e for e in H if any(dso.distance(x, y, e) > a.d(x, y)
                                  for x, y in itertools.permutations(B, 2))}
    assert set(o.X) == expect
    assert all(phi >= o.diam0 for phi in o.X.values())


@pytest.mark.parametrize("seed", range(3))
def test_stretch_random(seed):
    g = random_strongly_connected(20, 70, seed)
    eps = Fraction(1, 2)
    B, _ = fdo_pivots(g, eps, "hdph")
    o = _oracle(g, eps, B)
    for e in range(g.m):
        true = nx_diameter(g, (e,))
        est = query_fdo(o, e)
        if true == INF:
            assert est == INF
        else:
            assert true <= est <= (1 + eps) * true


@pytest.mark.parametrize("how", ["hdph", "sample:3"])
def test_stretch_long_cycle_edges_and_vertices(how):
    g = cycle_with_chords(40, 12, 5)
    eps = Fraction(1, 2)
    scheme, _, seed = how.partition(":")
    B, info = fdo_pivots(g, eps, scheme, seed=int(seed or 0))
    o = _oracle(g, eps, B, vf=True)
    for e in range(g.m):
        true = nx_diameter(g, (e,))
        est = query_fdo(o, e)
        assert est == INF if true == INF else true <= est <= (1 + eps) * true
    for v in range(g.n):
        true = nx_diameter(g, dead=(v,))
        est = query_fdo_vertex(o, v)
        assert est == INF if true == INF else true <= est <= (1 + eps) * true


def test_json_round_trip():
    g = cycle_with_chords(20, 5, 1)
    o = _oracle(g, Fraction(1, 3), range(0, 20, 3), vf=True)
    back = FdoOracle.from_json(o.to_json())
    assert back.to_json() == o.to_json()
    assert [query_fdo(back, e) for e in range(g.m)] == [query_fdo(o, e) for e in range(g.m)]


def test_vertex_query_needs_flag(tri):
    o = _oracle(tri, Fraction(1, 2), [0])
    with pytest.raises(ValueError):
        query_fdo_vertex(o, 0)


def test_presets():
    assert near_linear_eps(64, 64) == Fraction(32, 64)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert not check_sparse_regime(30, 120, 5, "1/2")
        assert w
