import json
from fractions import Fraction

import pytest

from ftoracle.dso import ReferenceDso
from ftoracle.generators import cycle_with_chords, random_digraph
from ftoracle.graph import apsp
from ftoracle.hdph import PivotHierarchy, hdph, num_levels, verify_hierarchy


def _build(g, C=2, vf=False):
    a = apsp(g)
    return hdph(a, ReferenceDso(g, a), C, vf)


def test_num_levels():
    assert num_levels(40, Fraction(2)) == 6
    assert num_levels(8, Fraction(2)) == 3
    assert num_levels(1, Fraction(2)) == 0


def test_small_graph_only_full_levels(tri):
    h = _build(tri)
    assert h.levels == [frozenset(range(3))] * 3


def test_rejects_small_C(tri):
    a = apsp(tri)
    with pytest.raises(ValueError):
        hdph(a, ReferenceDso(tri, a), Fraction(4, 3))


@pytest.mark.parametrize("seed", range(3))
def test_hitting_guarantee_random(seed):
    g = random_digraph(24, 60, seed)
    h = _build(g, vf=True)
    rep = verify_hierarchy(g, h)
    assert rep.ok, rep.violations[:5]
    assert rep.checked > 0


def test_hitting_guarantee_long_cycle_non_integer_C():
    g = cycle_with_chords(30, 6, 1)
    h = _build(g, C=Fraction(3, 2))
    assert verify_hierarchy(g, h).ok


def test_sabotage_detected():
    g = cycle_with_chords(20, 4, 0)
    h = _build(g)
    h.levels[3] = frozenset()
    rep = verify_hierarchy(g, h)
    assert not rep.ok
    assert {v[0] for v in rep.violations} == {3}


def test_full_sets_always_pass():
    g = random_digraph(16, 40, 9)
    h = PivotHierarchy(Fraction(2), [frozenset(range(g.n))] * 5, True)
    assert verify_hierarchy(g, h).ok


def test_json_round_trip_and_windows():
    g = random_digraph(20, 50, 2)
    h = _build(g)
    doc = json.loads(h.to_json())
    assert doc["version"] == 1
    assert doc["levels"][4]["r_lo"] == "16" and doc["levels"][4]["r_hi"] == "32"
    back = PivotHierarchy.from_json(h.to_json())
    assert back.levels == h.levels and back.C == h.C


def test_deterministic():
    g = random_digraph(20, 50, 4)
    assert _build(g).to_json() == _build(g).to_json()


def test_level_stats_record_L():
    g = cycle_with_chords(40, 4, 0)
    h = _build(g)
    assert [s.get("L") for s in h.stats[3:]] == [1, 1, 1, 1]
