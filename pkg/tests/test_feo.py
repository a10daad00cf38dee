import random

import pytest

from ftoracle.feo import build_feo, build_multi_dso, feo_from_json, feo_to_json, query_feo
from ftoracle.generators import random_strongly_connected
from ftoracle.graph import INF, Graph

from conftest import nx_ecc


def test_multi_dso_examples(tri, cycle4):
    dso = build_multi_dso(tri, 2)
    assert dso.distance(0, 2, ()) == 2
    assert dso.distance(0, 2, {1}) == 3
    assert build_multi_dso(cycle4, 2).distance(0, 2, {1, 3}) == INF
    with pytest.raises(ValueError):
        dso.distance(0, 2, {0, 1, 2})


def test_ecc0(tri, cycle4):
    assert build_feo(cycle4, build_multi_dso(cycle4, 1)).ecc0 == [3, 3, 3, 3]
    assert build_feo(tri, build_multi_dso(tri, 1)).ecc0 == [2, 2, 2]
    one = Graph(1, [])
    assert build_feo(one, build_multi_dso(one, 1)).ecc0 == [0]


def test_tri_estimate(tri):
    o = build_feo(tri, build_multi_dso(tri, 1))
    assert query_feo(o, 0, ()) == 2
    assert query_feo(o, 0, {1}) == 5
    assert nx_ecc(tri, 0, {1}) == 3
    assert query_feo(o, 1, {1}) == INF


def test_sensitivity_enforced(tri):
    o = build_feo(tri, build_multi_dso(tri, 1))
    with pytest.raises(ValueError):
        query_feo(o, 0, {0, 1})


@pytest.mark.parametrize("seed", range(3))
def test_sandwich_and_call_count(seed):
    g = random_strongly_connected(14, 48, seed)
    dso = build_multi_dso(g, 2)
    o = build_feo(g, dso, 1, 2)
    rng = random.Random(seed)
    Fs = [(e,) for e in range(g.m)] + [tuple(rng.sample(range(g.m), 2)) for _ in range(60)]
    for F in Fs:
        for s in range(g.n):
            before = dso.calls
            est = query_feo(o, s, F)
            assert dso.calls - before == len(F)
            true = nx_ecc(g, s, F)
            if true == INF:
                assert est == INF
            else:
                assert true <= est <= 2 * true


def test_json_round_trip():
    g = random_strongly_connected(10, 30, 2)
    o = build_feo(g, build_multi_dso(g, 2), 1, 2)
    back = feo_from_json(feo_to_json(o))
    rng = random.Random(0)
    for _ in range(50):
        F = rng.sample(range(g.m), rng.randint(0, 2))
        s = rng.randrange(g.n)
        assert query_feo(back, s, F) == query_feo(o, s, F)
