"""Path-reporting distance sensitivity oracles for one failed edge.

Three flavours share the same duck-typed surface (``distance``, ``path``,
``query``):

* :class:`ReferenceDso` -- exact, backed by lazily cached single-source runs.
* :class:`TruncatedCore` -- exact up to a radius ``r``, ``INF`` beyond it.
* :class:`ExtendedDso` -- grows a truncated oracle by a factor 3/2 through a
  pivot set (bridging set), recursively.

:func:`build_full_dso` chains core, pivot extension and oracle extension until
every distance in the graph is covered.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .graph import INF, ApspData, Graph, Path, apsp as build_apsp, split_vertices, sssp, walk_parents
from .hitting import greedy_pivot_selection

log = logging.getLogger(__name__)


class DsoQueryResult:
    """Distance plus a lazily materialised witness path."""

    __slots__ = ("distance", "_thunk", "_path")

    def __init__(self, distance: float, thunk: Callable[[], Path | None]):
        self.distance = distance
        self._thunk = thunk
        self._path = None

    @property
    def path(self) -> Path | None:
        if self.distance == INF:
            return None
        if self._path is None:
            self._path = self._thunk()
        return self._path


class _SourceCache:
    """Per-(source, failure) single-source results, filled under a lock."""

    def __init__(self, g: Graph, bound: float = INF):
        self.g = g
        self.bound = bound
        self._data: dict = {}
        self._lock = threading.Lock()
        self.runs = 0

    def get(self, s: int, e: int):
        key = (s, e)
        hit = self._data.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._data.get(key)
            if hit is None:
                hit = sssp(self.g, s, (e,), bound=self.bound)
                self._data[key] = hit
                self.runs += 1
        return hit


class ReferenceDso:
    """Exact single-failure DSO.

    A failure off the chosen ``s``-``t`` path cannot change the answer, so only
    failures on it trigger (and cache) a single-source run in ``G - e``.
    Vertex failures go through the vertex-split graph.
    """

    r = INF

    def __init__(self, g: Graph, apsp: ApspData | None = None):
        self.g = g
        self.apsp = apsp if apsp is not None else build_apsp(g)
        self._cache = _SourceCache(g)
        self._split = None
        self._split_lock = threading.Lock()

    def distance(self, s: int, t: int, e: int) -> float:
        if e not in self.apsp.path_edges(s, t):
            return self.apsp.d(s, t)
        dist, _ = self._cache.get(s, e)
        return dist[t].base

    def path(self, s: int, t: int, e: int) -> Path | None:
        if e not in self.apsp.path_edges(s, t):
            return self.apsp.path(s, t)
        dist, parent = self._cache.get(s, e)
        if not dist[t].finite:
            return None
        return Path(tuple(walk_parents(parent, s, t)), dist[t].base)

    def query(self, s: int, t: int, e: int) -> DsoQueryResult:
        return DsoQueryResult(self.distance(s, t, e), lambda: self.path(s, t, e))

    # vertex failures -------------------------------------------------------

    def _split_dso(self) -> "ReferenceDso":
        with self._split_lock:
            if self._split is None:
                self._split_graph = split_vertices(self.g)
                self._split = ReferenceDso(self._split_graph.graph)
        return self._split

    def vertex_distance(self, s: int, t: int, v: int) -> float:
        if v == s or v == t:
            return INF
        p0 = self.apsp.path(s, t)
        if p0 is None:
            return INF
        if v not in p0.vertices:
            return p0.length
        d = self._split_dso().distance(2 * s, 2 * t, v)
        return d if d == INF else d // 2

    def vertex_path(self, s: int, t: int, v: int) -> Path | None:
        if v == s or v == t:
            return None
        p0 = self.apsp.path(s, t)
        if p0 is None or v not in p0.vertices:
            return p0
        sp = self._split_dso().path(2 * s, 2 * t, v)
        if sp is None:
            return None
        return Path(self._split_graph.to_original(sp.vertices), sp.length // 2)

    @property
    def sssp_runs(self) -> int:
        return self._cache.runs


class TruncatedCore:
    """r-truncated DSO from distance-bounded single-source runs in ``G - e``."""

    def __init__(self, g: Graph, r, apsp: ApspData | None = None):
        if r < 1:
            raise ValueError("truncation radius must be >= 1")
        self.g = g
        self.r = Fraction(r)
        self.apsp = apsp if apsp is not None else build_apsp(g)
        self._cache = _SourceCache(g, bound=math.floor(self.r))

    def distance(self, s: int, t: int, e: int) -> float:
        if e not in self.apsp.path_edges(s, t):
            d = self.apsp.d(s, t)
            return d if d <= self.r else INF
        dist, _ = self._cache.get(s, e)
        return dist[t].base

    def path(self, s: int, t: int, e: int) -> Path | None:
        if e not in self.apsp.path_edges(s, t):
            return self.apsp.path(s, t) if self.apsp.d(s, t) <= self.r else None
        dist, parent = self._cache.get(s, e)
        if not dist[t].finite:
            return None
        return Path(tuple(walk_parents(parent, s, t)), dist[t].base)

    def query(self, s: int, t: int, e: int) -> DsoQueryResult:
        return DsoQueryResult(self.distance(s, t, e), lambda: self.path(s, t, e))


def build_reference_dso(g: Graph, apsp: ApspData | None = None) -> ReferenceDso:
    return ReferenceDso(g, apsp)


def build_truncated_core(g: Graph, r, apsp: ApspData | None = None) -> TruncatedCore:
    return TruncatedCore(g, r, apsp)


class ExtendedDso:
    """(3/2)r-truncated DSO over an r-truncated one and a bridging pivot set.

    Query time is O(|B|) inner queries; answers are memoised so that nested
    extensions stay polynomial.
    """

    def __init__(self, inner, pivots: Iterable[int]):
        self.inner = inner
        self.g = inner.g
        self.apsp = inner.apsp
        self.r = inner.r * Fraction(3, 2)
        self.pivots = tuple(sorted(pivots))
        self._memo: dict[tuple[int, int, int], tuple[float, int]] = {}

    def _solve(self, s: int, t: int, e: int) -> tuple[float, int]:
        key = (s, t, e)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        inner = self.inner
        d = inner.distance(s, t, e)
        if d != INF:
            ans = (d, -1)
        else:
            best, arg = INF, -1
            for z in self.pivots:
                a = inner.distance(s, z, e)
                if a >= best:
                    continue
                total = a + inner.distance(z, t, e)
                if total < best:
                    best, arg = total, z
            ans = (best, arg) if best <= self.r else (INF, -1)
        self._memo[key] = ans
        return ans

    def distance(self, s: int, t: int, e: int) -> float:
        return self._solve(s, t, e)[0]

    def path(self, s: int, t: int, e: int) -> Path | None:
        d, z = self._solve(s, t, e)
        if d == INF:
            return None
        if z < 0:
            return self.inner.path(s, t, e)
        return self.inner.path(s, z, e) + self.inner.path(z, t, e)

    def query(self, s: int, t: int, e: int) -> DsoQueryResult:
        return DsoQueryResult(self.distance(s, t, e), lambda: self.path(s, t, e))


def extend_dso(dso, pivots: Iterable[int]) -> ExtendedDso:
    return ExtendedDso(dso, pivots)


def extend_pivots(g: Graph, apsp: ApspData, prev: Iterable[int], dso, r_i, M: int | None = None,
                  stats: dict | None = None) -> set[int]:
    """Deterministic bridging pivots for the window ``[r_i/2 - 2M, r_i]``.

    Collects every chosen shortest path between two previous pivots with
    length in ``[r_i/18, r_i]``, plus every replacement path for a failure on
    such a path (queried from ``dso``) with length in that window, and hits
    them greedily.

    With integer weights the middle segment used by :class:`ExtendedDso` can
    be as short as ``r/2 - 2M``, so the window reaches down that far.  Once
    it reaches 0 (``r_i <= 4M``) a single vertex must be a pivot and all of
    ``V`` is returned.
    """
    r_i = Fraction(r_i)
    if dso.r < r_i:
        raise ValueError(f"DSO radius {dso.r} below r_i={r_i}")
    M = g.M if M is None else M
    if r_i <= 4 * M:
        if stats is not None:
            stats.update(r=str(r_i), paths=0, L=0, dso_queries=0, pivots=g.n, dense=True)
        return set(range(g.n))
    lo = r_i / 18
    prev = sorted(prev)
    paths: list[tuple[int, ...]] = []
    queries = 0
    for x in prev:
        for y in prev:
            if x == y:
                continue
            d = apsp.d(x, y)
            if d > r_i:
                continue
            p = apsp.path(x, y)
            if d >= lo:
                paths.append(p.vertices)
            for e in p.edges(g):
                queries += 1
                de = dso.distance(x, y, e)
                if lo <= de <= r_i:
                    paths.append(dso.path(x, y, e).vertices)
    L = max(1, math.ceil(r_i / (18 * M)))
    B = greedy_pivot_selection(paths, L)
    if stats is not None:
        stats.update(r=str(r_i), paths=len(paths), L=L, dso_queries=queries, pivots=len(B))
    return B


@dataclass
class FullDso:
    """Final exact oracle plus the per-level record of its construction."""

    g: Graph
    oracle: object
    core_radius: Fraction = Fraction(1)
    levels: list[dict] = field(default_factory=list)

    @property
    def r(self):
        return self.oracle.r

    @property
    def apsp(self):
        return self.oracle.apsp

    def distance(self, s: int, t: int, e: int) -> float:
        return self.oracle.distance(s, t, e)

    def path(self, s: int, t: int, e: int) -> Path | None:
        return self.oracle.path(s, t, e)

    def query(self, s: int, t: int, e: int) -> DsoQueryResult:
        return self.oracle.query(s, t, e)


def build_full_dso(g: Graph, r1=1, apsp: ApspData | None = None) -> FullDso:
    if r1 < 1:
        raise ValueError("r1 must be >= 1")
    apsp = apsp if apsp is not None else build_apsp(g)
    # bridging through a pivot needs r >= 2M, else one heavy edge cannot be split
    r = max(Fraction(r1), Fraction(2 * g.M))
    dso = TruncatedCore(g, r, apsp)
    V = set(range(g.n))
    pivots: dict[int, set[int]] = {-1: V, 0: V}
    out = FullDso(g, dso, core_radius=r)
    i = 1
    while r < g.n * g.M:
        stats: dict = {"i": i}
        B = extend_pivots(g, apsp, pivots[i - 2], dso, r, g.M, stats)
        pivots[i] = B
        dso = ExtendedDso(dso, B)
        out.levels.append(stats)
        log.debug("dso level %d: %s", i, stats)
        r = dso.r
        i += 1
    out.oracle = dso
    return out
