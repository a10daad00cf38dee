"""``ftoracle`` command line: gen, build, query, verify, bench."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import generators as gen
from .dag_feo import build_dag_feo, dag_feo_from_json, dag_feo_to_json, query_dag_feo
from .dso import ReferenceDso, build_full_dso
from .fdo import FdoOracle, build_fdo, fdo_pivots, parse_fraction, query_fdo, query_fdo_vertex
from .feo import build_feo, build_multi_dso, feo_from_json, feo_to_json, query_feo
from .graph import INF, GraphFormatError, apsp, parse_graph
from .hdph import hdph
from .lowerbound import (format_matrix, gen_conn_lb, gen_fdo_lb, parse_matrices, parse_matrix,
                         random_admissible_matrix, random_nonnull_matrix)
from .suites import SUITES, run_suite

log = logging.getLogger("ftoracle")


def fmt(x) -> str:
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return str(x)


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_graph(path: str):
    return parse_graph(Path(path).read_bytes())


def _edges(spec: str | None) -> list[int]:
    if not spec:
        return []
    return [int(x) for x in spec.split(",") if x.strip()]


# ---------------------------------------------------------------- gen


def _matrix_source(spec: str, make):
    if spec.startswith("random:"):
        return make(random.Random(int(spec.split(":", 1)[1])))
    return Path(spec).read_text()


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "random":
        m = args.m if args.m is not None else 3 * args.n
        if args.strong:
            g = gen.random_strongly_connected(args.n, m, args.seed, args.max_weight)
        else:
            g = gen.random_digraph(args.n, m, args.seed, args.max_weight)
        _write(args.out, g.to_text())
    elif fam == "random-dag":
        m = args.m if args.m is not None else 2 * args.n
        _write(args.out, gen.random_dag(args.n, m, args.seed, args.max_weight).to_text())
    elif fam == "fdo-lb":
        from math import isqrt
        N = isqrt(args.m)
        src = _matrix_source(args.matrix, lambda rng: random_admissible_matrix(N, rng))
        X = parse_matrix(src) if isinstance(src, str) else src
        inst = gen_fdo_lb(args.n, args.m, args.D, X)
        _write(args.out, inst.graph.to_text())
        if args.out not in (None, "-"):
            Path(args.out + ".matrix").write_text(format_matrix(X))
    elif fam == "conn-lb":
        N, K = 2 ** args.f, 2 ** (args.f + 2) - 2
        n = args.n if args.n is not None else args.blocks * K
        alpha = n // K
        rng = random.Random(args.seed)
        if args.matrix:
            src = _matrix_source(args.matrix, lambda r: [random_nonnull_matrix(N, r) for _ in range(alpha)])
            Xs = parse_matrices(src) if isinstance(src, str) else src
        else:
            Xs = [random_nonnull_matrix(N, rng) for _ in range(alpha)]
        inst = gen_conn_lb(n, args.f, Xs)
        _write(args.out, inst.graph.to_text())
        if args.out not in (None, "-"):
            Path(args.out + ".matrix").write_text("\n".join(format_matrix(X) for X in Xs))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(fam)
    return 0


# ---------------------------------------------------------------- build


def cmd_build(args) -> int:
    g = _read_graph(args.graph)
    kind = args.oracle
    if kind == "fdo":
        eps = parse_fraction(args.eps)
        a = apsp(g)
        d = ReferenceDso(g, a)
        how, _, seed = args.pivots.partition(":")
        B, info = fdo_pivots(g, eps, how, seed=int(seed or 0), c=args.c, apsp=a, dso=d)
        log.info("pivots: %s", info)
        o = build_fdo(g, eps, B, d, a, vertex_failures=args.vertex_failures)
        text = o.to_json()
    elif kind == "feo":
        o = build_feo(g, build_multi_dso(g, args.f), 1, args.f)
        text = feo_to_json(o)
    elif kind == "dag-feo":
        text = dag_feo_to_json(build_dag_feo(g, args.source, args.f))
    elif kind == "hdph":
        a = apsp(g)
        text = hdph(a, ReferenceDso(g, a), parse_fraction(args.C), args.vertex_failures).to_json()
    else:  # pragma: no cover
        raise ValueError(kind)
    _write(args.out, text + "\n")
    return 0


# ---------------------------------------------------------------- query


def load_oracle(kind: str, text: str):
    if kind == "fdo":
        return FdoOracle.from_json(text)
    if kind == "feo":
        return feo_from_json(text)
    if kind == "dag-feo":
        return dag_feo_from_json(text)
    raise ValueError(f"unknown oracle {kind!r}")


def answer(kind: str, o, args) -> str:
    if kind == "fdo":
        if args.vertex is not None:
            return fmt(query_fdo_vertex(o, args.vertex))
        if args.edge is None:
            raise ValueError("fdo query needs --edge or --vertex")
        return fmt(query_fdo(o, args.edge))
    if kind == "feo":
        return fmt(query_feo(o, args.source, _edges(args.fail)))
    return fmt(query_dag_feo(o, _edges(args.fail)))


def cmd_query(args) -> int:
    o = load_oracle(args.oracle, Path(args.input).read_text())
    print(answer(args.oracle, o, args))
    return 0


# ---------------------------------------------------------------- verify / bench


def cmd_verify(args) -> int:
    kwargs = {"n": args.n, "graphs": args.graphs, "seed": args.seed}
    if args.m is not None and args.suite not in ("lb", "greedy"):
        kwargs["m"] = args.m
    rep = run_suite(args.suite, **kwargs)
    doc = rep.to_dict()
    if args.json:
        _write(args.json, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    for c in rep.checks:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}")
    print(f"{rep.suite}: {rep.violations} violations in {rep.wall_time:.2f}s")
    return 0 if rep.ok else 1


def cmd_bench(args) -> int:
    g = gen.random_strongly_connected(args.n, args.m or 4 * args.n, args.seed)
    rows = {}
    t0 = time.perf_counter()
    a = apsp(g)
    rows["apsp"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    full = build_full_dso(g, apsp=a)
    rows["full_dso_build"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    h = hdph(a, ReferenceDso(g, a), 2)
    rows["hdph"] = time.perf_counter() - t0
    eps = parse_fraction(args.eps)
    t0 = time.perf_counter()
    d = ReferenceDso(g, a)
    B, _ = fdo_pivots(g, eps, "hdph", apsp=a, dso=d)
    o = build_fdo(g, eps, B, d, a)
    rows["fdo_build"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for e in range(g.m):
        query_fdo(o, e)
    rows["fdo_query_per_edge"] = (time.perf_counter() - t0) / max(1, g.m)
    report = {
        "version": 1,
        "params": {"n": g.n, "m": g.m, "seed": args.seed, "eps": fmt(eps)},
        "seconds": {k: round(v, 6) for k, v in rows.items()},
        "hdph_sizes": [len(B_i) for B_i in h.levels],
        "dso_levels": [lv.get("pivots") for lv in full.levels],
        "fdo": {"pivots": len(B), "X": len(o.X), "Y": len(o.Y)},
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ftoracle", description="Fault-tolerant diameter and eccentricity oracles.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a graph or lower-bound instance")
    g.add_argument("--family", required=True, choices=["random", "random-dag", "fdo-lb", "conn-lb"])
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-weight", type=int, default=1)
    g.add_argument("--strong", action="store_true", help="rejection-sample until strongly connected")
    g.add_argument("--D", type=int, help="target diameter (fdo-lb)")
    g.add_argument("--matrix", help="matrix file or random:SEED")
    g.add_argument("--f", type=int, default=1, help="tree height (conn-lb)")
    g.add_argument("--blocks", type=int, default=1, help="number of blocks (conn-lb)")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="build an oracle and write it as JSON")
    b.add_argument("--oracle", required=True, choices=["fdo", "feo", "dag-feo", "hdph"])
    b.add_argument("--graph", required=True)
    b.add_argument("--out", default="-")
    b.add_argument("--eps", default="1/2")
    b.add_argument("--pivots", default="hdph", help="hdph or sample:SEED")
    b.add_argument("--c", type=float, default=3.0)
    b.add_argument("--f", type=int, default=1)
    b.add_argument("--source", type=int, default=0)
    b.add_argument("--C", default="2")
    b.add_argument("--vertex-failures", action="store_true")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer a query from a built oracle")
    q.add_argument("--oracle", required=True, choices=["fdo", "feo", "dag-feo"])
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--edge", type=int)
    q.add_argument("--vertex", type=int)
    q.add_argument("--source", type=int, default=0)
    q.add_argument("--fail", default="")
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="run a brute-force verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--n", type=int, default=20)
    v.add_argument("--m", type=int)
    v.add_argument("--graphs", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", help="write the RunReport here")
    v.set_defaults(func=cmd_verify)

    be = sub.add_parser("bench", help="time the build pipelines on one random graph")
    be.add_argument("--n", type=int, default=30)
    be.add_argument("--m", type=int)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--eps", default="1/2")
    be.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)
    try:
        return args.func(args)
    except (ValueError, GraphFormatError, OSError, RuntimeError) as exc:
        print(f"ftoracle: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
