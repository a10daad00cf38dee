"""Fault-tolerant eccentricity from any distance sensitivity oracle.

For a query ``(s, F)`` the estimate is ``ecc_G(s) + max d(s, y, F)`` over the
heads ``y`` of the failed edges.  With an exact oracle it lies in
``[ecc_{G-F}(s), 2 ecc_{G-F}(s)]``; an oracle of stretch ``sigma`` widens the
upper end to ``(1 + sigma)``.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from typing import Iterable

from .graph import INF, Graph, parse_graph, sssp


class MultiFailureDso:
    """Exact ``d(s, t, F)`` for ``|F| <= f``; one cached single-source run per ``(s, F)``."""

    sigma = 1

    def __init__(self, g: Graph, f: int):
        if f < 0:
            raise ValueError("f must be non-negative")
        self.g = g
        self.f = f
        self._cache: dict[tuple[int, frozenset[int]], list] = {}
        self._lock = threading.Lock()
        self.calls = 0

    def _dist(self, s: int, F: frozenset[int]):
        key = (s, F)
        hit = self._cache.get(key)
        if hit is None:
            with self._lock:
                hit = self._cache.get(key)
                if hit is None:
                    hit = [d.base for d in sssp(self.g, s, F)[0]]
                    self._cache[key] = hit
        return hit

    def distance(self, s: int, t: int, F: Iterable[int]) -> float:
        F = frozenset(F)
        if len(F) > self.f:
            raise ValueError(f"|F|={len(F)} exceeds sensitivity {self.f}")
        self.calls += 1
        return self._dist(s, F)[t]


def build_multi_dso(g: Graph, f: int) -> MultiFailureDso:
    return MultiFailureDso(g, f)


@dataclass
class FeoOracle:
    g: Graph
    ecc0: list[float]
    dso: object
    sigma: float
    f: int

    def query(self, s: int, F: Iterable[int]) -> float:
        return query_feo(self, s, F)


def build_feo(g: Graph, dso, sigma=1, f: int | None = None) -> FeoOracle:
    f = dso.f if f is None else f
    if getattr(dso, "f", f) < f:
        raise ValueError("oracle sensitivity below f")
    ecc0 = [max(d.base for d in sssp(g, x)[0]) for x in range(g.n)]
    return FeoOracle(g, ecc0, dso, sigma, f)


def query_feo(o: FeoOracle, s: int, F: Iterable[int]) -> float:
    F = frozenset(F)
    if len(F) > o.f:
        raise ValueError(f"|F|={len(F)} exceeds sensitivity {o.f}")
    worst = 0
    for e in sorted(F):
        y = o.g.edges[e][1]
        d = o.dso.distance(s, y, F)
        if d > worst:
            worst = d
    return INF if worst == INF else o.ecc0[s] + worst


FORMAT_VERSION = 1


def feo_to_json(o: FeoOracle) -> str:
    """The brute-force oracle is rebuilt from the embedded graph on load."""
    return json.dumps({
        "version": FORMAT_VERSION,
        "f": o.f,
        "sigma": o.sigma,
        "ecc0": ["inf" if e == INF else e for e in o.ecc0],
        "graph": o.g.to_text(),
    }, sort_keys=True)


def feo_from_json(text: str) -> FeoOracle:
    doc = json.loads(text)
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported oracle version {doc.get('version')!r}")
    g = parse_graph(doc["graph"])
    ecc0 = [INF if e == "inf" else e for e in doc["ecc0"]]
    return FeoOracle(g, ecc0, MultiFailureDso(g, doc["f"]), doc["sigma"], doc["f"])
