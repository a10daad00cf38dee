import json
import random
import subprocess
import sys

import pytest

from ftoracle.cli import answer, fmt, load_oracle, main
from ftoracle.generators import cycle_with_chords, random_dag, random_strongly_connected
from ftoracle.graph import INF
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt():
    assert fmt(INF) == "inf"
    assert fmt(Fraction(9, 2)) == "9/2"
    assert fmt(Fraction(4)) == "4"
    assert fmt(3.0) == "3"


def test_gen_random_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert run(capsys, "gen", "--family", "random", "--n", "20", "--m", "60", "--seed", "7",
                   "--out", str(p))[0] == 0
    assert a.read_text() == b.read_text()
    assert a.read_text().splitlines()[0].split()[:2] == ["20", "60"]


@pytest.mark.filterwarnings("ignore")
def test_gen_lower_bounds(tmp_path, capsys):
    out = tmp_path / "lb.txt"
    assert run(capsys, "gen", "--family", "fdo-lb", "--n", "64", "--m", "16", "--D", "3",
               "--matrix", "random:1", "--out", str(out))[0] == 0
    assert (tmp_path / "lb.txt.matrix").exists()
    out2 = tmp_path / "conn.txt"
    assert run(capsys, "gen", "--family", "conn-lb", "--f", "2", "--blocks", "2", "--seed", "3",
               "--out", str(out2))[0] == 0
    assert len((tmp_path / "conn.txt.matrix").read_text().strip().split("\n\n")) == 2


def _build(tmp_path, capsys, text, *argv):
    gpath = tmp_path / "g.txt"
    gpath.write_text(text)
    opath = tmp_path / "o.json"
    code, _, err = run(capsys, "build", "--graph", str(gpath), "--out", str(opath), *argv)
    assert code == 0, err
    return opath


class _Args:
    def __init__(self, **kw):
        self.edge = self.vertex = None
        self.source = 0
        self.fail = ""
        self.__dict__.update(kw)


@pytest.mark.filterwarnings("ignore")
def test_fdo_round_trip(tmp_path, capsys):
    g = cycle_with_chords(30, 8, 2)
    opath = _build(tmp_path, capsys, g.to_text(), "--oracle", "fdo", "--eps", "1/2", "--vertex-failures")
    o = load_oracle("fdo", opath.read_text())
    rng = random.Random(0)
    for _ in range(100):
        if rng.random() < 0.5:
            e = rng.randrange(g.m)
            code, out, _ = run(capsys, "query", "--oracle", "fdo", "--in", str(opath), "--edge", str(e))
            assert out.strip() == answer("fdo", o, _Args(edge=e))
        else:
            v = rng.randrange(g.n)
            code, out, _ = run(capsys, "query", "--oracle", "fdo", "--in", str(opath), "--vertex", str(v))
            assert out.strip() == answer("fdo", o, _Args(vertex=v))
        assert code == 0


def test_feo_round_trip(tmp_path, capsys):
    g = random_strongly_connected(12, 36, 1)
    opath = _build(tmp_path, capsys, g.to_text(), "--oracle", "feo", "--f", "2")
    o = load_oracle("feo", opath.read_text())
    rng = random.Random(1)
    for _ in range(100):
        s = rng.randrange(g.n)
        F = ",".join(map(str, rng.sample(range(g.m), rng.randint(0, 2))))
        code, out, _ = run(capsys, "query", "--oracle", "feo", "--in", str(opath), "--source", str(s),
                           "--fail", F)
        assert code == 0 and out.strip() == answer("feo", o, _Args(source=s, fail=F))


def test_dag_feo_round_trip(tmp_path, capsys):
    g = random_dag(16, 40, 2, max_weight=3)
    opath = _build(tmp_path, capsys, g.to_text(), "--oracle", "dag-feo", "--f", "3")
    o = load_oracle("dag-feo", opath.read_text())
    rng = random.Random(2)
    for _ in range(100):
        F = ",".join(map(str, rng.sample(range(g.m), rng.randint(0, 3))))
        code, out, _ = run(capsys, "query", "--oracle", "dag-feo", "--in", str(opath), "--fail", F)
        assert code == 0 and out.strip() == answer("dag-feo", o, _Args(fail=F))


@pytest.mark.filterwarnings("ignore")
def test_cycle_query_is_inf(tmp_path, capsys):
    opath = _build(tmp_path, capsys, "4 4 directed\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n", "--oracle", "fdo")
    assert run(capsys, "query", "--oracle", "fdo", "--in", str(opath), "--edge", "2")[1].strip() == "inf"


def test_build_hdph(tmp_path, capsys):
    g = random_strongly_connected(16, 48, 4)
    opath = _build(tmp_path, capsys, g.to_text(), "--oracle", "hdph")
    doc = json.loads(opath.read_text())
    assert doc["version"] == 1 and doc["levels"]


def test_error_exit_codes(tmp_path, capsys):
    cyc = tmp_path / "cyc.txt"
    cyc.write_text("3 3 directed\n0 1 1\n1 2 1\n2 0 1\n")
    code, _, err = run(capsys, "build", "--oracle", "dag-feo", "--graph", str(cyc))
    assert code == 2 and "cycle" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1 directed\n0 9 1\n")
    code, _, err = run(capsys, "build", "--oracle", "feo", "--graph", str(bad))
    assert code == 2 and "line" in err
    code, _, _ = run(capsys, "build", "--oracle", "feo", "--graph", str(tmp_path / "missing"))
    assert code == 2
    with pytest.raises(SystemExit):
        main(["gen", "--family", "nope"])


def test_verify_and_json(tmp_path, capsys):
    rep = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "--suite", "dag-feo", "--n", "12", "--graphs", "2",
                       "--json", str(rep))
    assert code == 0 and "PASS" in out
    doc = json.loads(rep.read_text())
    assert doc["suite"] == "dag-feo" and doc["counters"]["violations"] == 0


@pytest.mark.filterwarnings("ignore")
def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "12")
    assert code == 0 and "fdo_build" in json.loads(out)["seconds"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "ftoracle", "gen", "--family", "random", "--n", "5",
                        "--m", "7", "--seed", "1"], capture_output=True, text=True, check=True)
    assert r.stdout.startswith("5 7")
