"""Brute-force verification suites behind ``ftoracle verify``.

Every suite draws graph ``i`` from seed ``seed + i`` and returns a
:class:`RunReport`; a suite passes iff its ``violations`` counter is zero.
"""

from __future__ import annotations

import itertools
import math
import random
import time
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import generators as gen
from .dag_feo import build_dag_feo, query_dag_feo
from .dso import ReferenceDso, build_full_dso
from .fdo import build_fdo, fdo_pivots, parse_fraction, query_fdo
from .feo import build_feo, build_multi_dso, query_feo
from .graph import INF, apsp, distance_matrix, is_strongly_connected, replacement_path
from .hdph import hdph, verify_hierarchy
from .hitting import greedy_pivot_selection
from .lowerbound import (decode_conn_lb, decode_fdo_lb, failure_set, gen_conn_lb, gen_fdo_lb,
                         random_admissible_matrix, random_nonnull_matrix)
from .ssrp import make_context, ssrp_hitting_chain, verify_ssrp_hitting

REPORT_VERSION = 1


@dataclass
class RunReport:
    suite: str
    params: dict
    checks: list[dict] = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    wall_time: float = 0.0
    version: int = REPORT_VERSION

    def check(self, name: str, passed: bool, **extra) -> None:
        self.checks.append({"name": name, "passed": bool(passed), **extra})

    def bump(self, key: str, by=1) -> None:
        self.counters[key] = self.counters.get(key, 0) + by

    @property
    def violations(self) -> int:
        return self.counters.get("violations", 0)

    @property
    def ok(self) -> bool:
        return self.violations == 0 and all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        return asdict(self)


def _diam(Dm: np.ndarray, dead: int | None = None) -> float:
    if dead is not None:
        keep = [i for i in range(Dm.shape[0]) if i != dead]
        Dm = Dm[np.ix_(keep, keep)]
    return float(Dm.max()) if Dm.size else 0.0


def suite_hdph(n: int, graphs: int, seed: int, m: int | None = None, C=2) -> RunReport:
    m = m if m is not None else 3 * n
    rep = RunReport("hdph", {"n": n, "m": m, "graphs": graphs, "seed": seed, "C": str(C)})
    worst_c = 0.0
    for i in range(graphs):
        g = gen.random_digraph(n, m, seed + i)
        a = apsp(g)
        h = hdph(a, ReferenceDso(g, a), C, include_vertex_failures=True)
        r = verify_hierarchy(g, h)
        rep.bump("violations", len(r.violations))
        rep.bump("checked", r.checked)
        for lv, size in enumerate(r.sizes):
            scale = (n / float(h.C) ** lv) * math.log(n)
            worst_c = max(worst_c, size / scale)
        rep.check(f"graph {seed + i}", r.ok, sizes=r.sizes)
    rep.counters["size_constant"] = round(worst_c, 4)
    return rep


def suite_fdo(n: int, graphs: int, seed: int, m: int | None = None, eps="1/2",
              pivots: str = "hdph") -> RunReport:
    m = m if m is not None else 4 * n
    eps = parse_fraction(eps)
    rep = RunReport("fdo", {"n": n, "m": m, "graphs": graphs, "seed": seed,
                            "eps": f"{eps.numerator}/{eps.denominator}", "pivots": pivots})
    for i in range(graphs):
        g = gen.random_strongly_connected(n, m, seed + i)
        a = apsp(g)
        d = ReferenceDso(g, a)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            B, _ = fdo_pivots(g, eps, pivots, seed=seed + i, apsp=a, dso=d)
            o = build_fdo(g, eps, B, d, a)
        bad = 0
        for e in range(g.m):
            true = _diam(distance_matrix(g, banned=(e,)))
            est = query_fdo(o, e)
            if true == INF:
                bad += est != INF
            else:
                bad += not (true <= est <= (1 + eps) * Fraction(int(true)))
        rep.bump("violations", bad)
        rep.bump("pivots", len(B))
        rep.check(f"graph {seed + i}", bad == 0, X=len(o.X), Y=len(o.Y))
    return rep


def suite_feo(n: int, graphs: int, seed: int, m: int | None = None, f: int = 2,
              samples: int = 100) -> RunReport:
    m = m if m is not None else 4 * n
    rep = RunReport("feo", {"n": n, "m": m, "graphs": graphs, "seed": seed, "f": f})
    for i in range(graphs):
        g = gen.random_strongly_connected(n, m, seed + i)
        dso = build_multi_dso(g, f)
        o = build_feo(g, dso, 1, f)
        rng = random.Random(seed + i)
        Fs = [(e,) for e in range(g.m)] + [tuple(rng.sample(range(g.m), f)) for _ in range(samples)]
        bad = 0
        for F in Fs:
            Dm = distance_matrix(g, banned=F)
            for s in range(n):
                true = float(Dm[s].max())
                before = dso.calls
                est = query_feo(o, s, F)
                rep.bump("dso_calls", dso.calls - before)
                bad += dso.calls - before != len(set(F))
                if true == INF:
                    bad += est != INF
                else:
                    bad += not (true <= est <= 2 * true)
        rep.bump("violations", bad)
        rep.check(f"graph {seed + i}", bad == 0)
    return rep


def suite_dag_feo(n: int, graphs: int, seed: int, m: int | None = None, f: int = 3,
                  samples: int = 100) -> RunReport:
    m = m if m is not None else 3 * n
    rep = RunReport("dag-feo", {"n": n, "m": m, "graphs": graphs, "seed": seed, "f": f})
    for i in range(graphs):
        g = gen.random_dag(n, m, seed + i)
        o = build_dag_feo(g, 0, f)
        bad = int(o.stored_entries() > n * (f + 1))
        rng = random.Random(seed + i)
        Fs = [()] + [(e,) for e in range(g.m)] + [tuple(rng.sample(range(g.m), f)) for _ in range(samples)]
        for F in Fs:
            true = float(distance_matrix(g, banned=F)[0].max())
            before = o.scans
            est = query_dag_feo(o, F)
            F0 = len(set(F) & o.tree_edges)
            bad += o.scans - before > 2 * F0 + (len(set(F)) - F0)
            if true == INF:
                bad += est != INF
            else:
                bad += not (true <= est <= (f + 1) * true)
        rep.bump("violations", bad)
        rep.check(f"graph {seed + i}", bad == 0, stored=o.stored_entries())
    return rep


def suite_lb(n: int, graphs: int, seed: int) -> RunReport:
    """Both encodings at ``N = 4`` (``fdo-lb``) and ``f = 1..3`` (``conn-lb``); ``n`` is unused."""
    rep = RunReport("lb", {"graphs": graphs, "seed": seed})
    for i in range(graphs):
        rng = random.Random(seed + i)
        for D in (3, 4, 5):
            X = random_admissible_matrix(4, rng)
            inst = gen_fdo_lb(24, 24, D, X)
            g = inst.graph
            bad = int(_diam(distance_matrix(g)) != D)
            diam = {}
            for a in range(4):
                for b in range(1, 4):
                    e = inst.bc_edge[a][b]
                    diam[e] = _diam(distance_matrix(g, banned=(e,)))
                    bad += diam[e] != (D if X[a][b] else inst.failed_diameter)
            bad += decode_fdo_lb(inst, lambda e: diam[e]) != X
            rep.bump("violations", bad)
            rep.check(f"fdo-lb seed {seed + i} D={D}", bad == 0)
        for f in (1, 2, 3):
            K = 2 ** (f + 2) - 2
            Xs = [random_nonnull_matrix(2 ** f, rng) for _ in range(2)]
            inst = gen_conn_lb(2 * K, f, Xs)
            g = inst.graph
            bad = int(not is_strongly_connected(g))
            for blk, j1, j2 in itertools.product(range(2), range(2 ** f), range(2 ** f)):
                F = failure_set(inst, blk, j1, j2)
                bad += len(F) != 2 * f
                bad += is_strongly_connected(g, F) != bool(Xs[blk][j1][j2])
            bad += decode_conn_lb(inst, lambda F: is_strongly_connected(g, F)) != Xs
            rep.bump("violations", bad)
            rep.check(f"conn-lb seed {seed + i} f={f}", bad == 0)
    return rep


def suite_ssrp(n: int, graphs: int, seed: int, m: int | None = None) -> RunReport:
    m = m if m is not None else 2 * n
    rep = RunReport("ssrp", {"n": n, "m": m, "graphs": graphs, "seed": seed})
    for i in range(graphs):
        g = gen.random_rooted_digraph(n, m, seed + i)
        ctx = make_context(g, 0)
        levels = ssrp_hitting_chain(ctx)
        per_level = []
        bad = int(not ctx.separator_ok())
        for k, B in enumerate(levels):
            r = verify_ssrp_hitting(ctx, B, k)
            bad += len(r.violations)
            per_level.append({"k": k, "pairs": r.pairs, "pivots": len(B), "violations": len(r.violations)})
        rep.bump("violations", bad)
        rep.check(f"graph {seed + i}", bad == 0, levels=per_level, S=len(ctx.S), T=len(ctx.T))
    return rep


def suite_dso(n: int, graphs: int, seed: int, m: int | None = None, max_weight: int = 1) -> RunReport:
    m = m if m is not None else 3 * n
    rep = RunReport("dso", {"n": n, "m": m, "graphs": graphs, "seed": seed, "M": max_weight})
    for i in range(graphs):
        g = gen.random_digraph(n, m, seed + i, max_weight)
        full = build_full_dso(g)
        bad = 0
        for e in range(g.m):
            Dm = distance_matrix(g, banned=(e,))
            for s in range(n):
                for t in range(n):
                    if s == t:
                        continue
                    d = full.distance(s, t, e)
                    bad += d != Dm[s, t]
                    if d != INF:
                        p = full.path(s, t, e)
                        edges = p.edges(g)
                        bad += (e in edges or len(set(p.vertices)) != len(p.vertices)
                                or sum(g.edges[x][2] for x in edges) != d)
        rep.bump("violations", bad)
        rep.check(f"graph {seed + i}", bad == 0, levels=len(full.levels))
    return rep


def suite_greedy(n: int, graphs: int, seed: int) -> RunReport:
    """``graphs`` random path families over ``n`` vertices."""
    rep = RunReport("greedy", {"n": n, "families": graphs, "seed": seed})
    for i in range(graphs):
        rng = random.Random(seed + i)
        L = rng.choice([4, 8, 16])
        q = rng.randint(1, 500)
        fam = [rng.sample(range(n), rng.randint(L, min(n, 2 * L))) for _ in range(q)]
        B = greedy_pivot_selection(fam, L)
        bound = math.ceil((n / L) * (math.log(q) + 1))
        bad = sum(1 for p in fam if not set(p[:L]) & B) + int(len(B) > bound)
        rep.bump("violations", bad)
        rep.check(f"family {seed + i}", bad == 0, size=len(B), bound=bound)
    return rep


SUITES = {
    "hdph": suite_hdph,
    "fdo": suite_fdo,
    "feo": suite_feo,
    "dag-feo": suite_dag_feo,
    "lb": suite_lb,
    "ssrp": suite_ssrp,
    "dso": suite_dso,
    "greedy": suite_greedy,
}


def run_suite(name: str, **kwargs) -> RunReport:
    t0 = time.perf_counter()
    rep = SUITES[name](**kwargs)
    rep.wall_time = round(time.perf_counter() - t0, 3)
    return rep
