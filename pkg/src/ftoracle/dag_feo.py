"""Single-source eccentricity oracle for DAGs under up to ``f`` edge failures.

Each edge gets the reduced weight ``wt*(x, y) = d(s, x) + w(x, y) - d(s, y)``,
which is zero on the shortest-path tree.  Every vertex keeps its ``f + 1``
cheapest non-tree in-edges; a failed tree edge into ``y`` is patched by the
first surviving entry of ``y``'s list.
"""

from __future__ import annotations

import graphlib
import json
from dataclasses import dataclass
from typing import Iterable

from .graph import INF, Graph, parse_graph


@dataclass
class DagFeoOracle:
    g: Graph
    s: int
    f: int
    parent: list[int]
    tree_edge: list[int]
    dist0: list[float]
    ecc0: float
    wt_star: list[float]
    L_in: list[list[int]]
    scans: int = 0

    @property
    def tree_edges(self) -> frozenset[int]:
        return frozenset(e for e in self.tree_edge if e >= 0)

    def stored_entries(self) -> int:
        return sum(len(lst) for lst in self.L_in)


def topological_order(g: Graph) -> list[int]:
    ts = graphlib.TopologicalSorter({v: [] for v in range(g.n)})
    for u, v, _ in g.edges:
        ts.add(v, u)
    try:
        return list(ts.static_order())
    except graphlib.CycleError as exc:
        raise ValueError(f"graph has a cycle through {exc.args[1]}") from None


def build_dag_feo(g: Graph, s: int, f: int) -> DagFeoOracle:
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range")
    if f < 0:
        raise ValueError("f must be non-negative")
    order = topological_order(g)
    dist = [INF] * g.n
    parent = [-1] * g.n
    tree_edge = [-1] * g.n
    dist[s] = 0
    for v in order:
        for u, w, eid in sorted(g.inc[v]):
            if dist[u] == INF:
                continue
            if dist[u] + w < dist[v]:
                dist[v], parent[v], tree_edge[v] = dist[u] + w, u, eid
    unreachable = [v for v in range(g.n) if dist[v] == INF]
    if unreachable:
        raise ValueError(f"vertices unreachable from source {s}: {unreachable[:10]}")
    tree = set(tree_edge)
    wt_star = [dist[u] + w - dist[v] for u, v, w in g.edges]
    L_in = []
    for v in range(g.n):
        cand = sorted((wt_star[eid], eid) for _, _, eid in g.inc[v] if eid not in tree)
        L_in.append([eid for _, eid in cand[: f + 1]])
    return DagFeoOracle(g, s, f, parent, tree_edge, dist, max(dist), wt_star, L_in)


def query_dag_feo(o: DagFeoOracle, F: Iterable[int]) -> float:
    """``ecc0 + sum of phi`` over failed tree edges; bumps ``o.scans`` per list entry read."""
    F = frozenset(F)
    if len(F) > o.f:
        raise ValueError(f"|F|={len(F)} exceeds sensitivity {o.f}")
    tree = o.tree_edges
    total = o.ecc0
    for e in sorted(F & tree):
        y = o.g.edges[e][1]
        phi = INF
        for cand in o.L_in[y]:
            o.scans += 1
            if cand not in F:
                phi = o.wt_star[cand]
                break
        total += phi
    return total


FORMAT_VERSION = 1


def dag_feo_to_json(o: DagFeoOracle) -> str:
    return json.dumps({
        "version": FORMAT_VERSION,
        "source": o.s,
        "f": o.f,
        "ecc0": o.ecc0,
        "parent": o.parent,
        "tree_edge": o.tree_edge,
        "dist0": o.dist0,
        "wt_star": o.wt_star,
        "L_in": o.L_in,
        "graph": o.g.to_text(),
    }, sort_keys=True)


def dag_feo_from_json(text: str) -> DagFeoOracle:
    doc = json.loads(text)
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported oracle version {doc.get('version')!r}")
    return DagFeoOracle(parse_graph(doc["graph"]), doc["source"], doc["f"], doc["parent"],
                        doc["tree_edge"], doc["dist0"], doc["ecc0"], doc["wt_star"], doc["L_in"])
