"""Deterministic hitting sets for single-source replacement paths.

Given a source ``s`` the BFS tree ``T_s`` is split at a separator vertex
``t`` into two edge-disjoint subtrees ``S`` (containing ``s``) and ``T``
(rooted at ``t``).  ``P`` is the tree path from ``s`` to ``t`` and ``G_P``
is ``G`` without the edges of ``P``.

A pair ``(u, v)`` with ``u`` on ``P`` and ``v`` in ``T`` is *k-relevant*
when ``d_GP(u, v) > 2**(k+1)`` and every vertex before ``u`` on ``P`` is
strictly farther from ``v``.  Level ``k`` needs a pivot set ``B_k`` such
that every k-relevant pair has a pivot ``b`` on a shortest ``u``-``v`` path
in ``G_P`` with ``d_GP(u, b) <= 2**(k+1)``.

Levels ``0 .. floor(log2(n)/2)`` come from :func:`compute_b0`, the remaining
levels up to ``floor(log2 n)`` from :func:`compute_bk`.  Levels are indexed
from 0 throughout.
"""

from __future__ import annotations

import heapq
import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .graph import INF, Graph, distance_matrix
from .hitting import greedy_pivot_selection

FORMAT_VERSION = 1


class EpsDist(NamedTuple):
    """Length ``unit + eps * epsilon`` for an infinitesimal ``0 < epsilon < 1/n``."""

    unit: float
    eps: int = 0

    def __add__(self, other):  # type: ignore[override]
        return EpsDist(self.unit + other.unit, self.eps + other.eps)

    def value(self, epsilon):
        return self.unit + self.eps * epsilon


@dataclass
class SsrpContext:
    g: Graph
    s: int
    parent: list[int]
    depth: list[int]
    t: int
    S: frozenset[int]
    T: frozenset[int]
    P: tuple[int, ...]
    P_edges: frozenset[int]
    _dgp: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.g.n

    def dist_gp(self) -> np.ndarray:
        """All-pairs distances in ``G_P`` (cached)."""
        if self._dgp is None:
            self._dgp = distance_matrix(self.g, banned=self.P_edges)
        return self._dgp

    def separator_ok(self) -> bool:
        n = self.n
        return all(n <= 3 * len(X) <= 2 * n for X in (self.S, self.T))


def bfs_tree(g: Graph, s: int) -> tuple[list[int], list[int]]:
    """BFS tree from ``s``; among equally deep candidates the smallest parent id wins."""
    depth = [-1] * g.n
    parent = [-1] * g.n
    depth[s] = 0
    frontier = [s]
    while frontier:
        nxt = set()
        for u in sorted(frontier):
            for v, _, _ in g.out[u]:
                if depth[v] < 0:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    nxt.add(v)
        frontier = sorted(nxt)
    return parent, depth


def _subtree_members(children: list[list[int]], root: int) -> list[int]:
    out, stack = [], [root]
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(children[u])
    return out


def _split_at(n: int, t: int, children: list[list[int]], size: list[int]) -> list[int] | None:
    """Children of ``t`` whose subtrees (plus ``t``) form a balanced ``T``, or None."""
    kids = children[t]
    # reachable[sigma] = index of the child that first reached sigma (for reconstruction)
    reach: dict[int, tuple[int, int]] = {0: (-1, -1)}
    for idx, c in enumerate(kids):
        for sigma in sorted(reach, reverse=True):
            nxt = sigma + size[c]
            if nxt not in reach:
                reach[nxt] = (idx, sigma)
    ok = [sg for sg in reach if n <= 3 * (1 + sg) <= 2 * n and n <= 3 * (n - sg) <= 2 * n]
    if not ok:
        return None
    best = min(ok, key=lambda sg: (abs(2 * (1 + sg) - (n + 1)), sg))
    chosen = []
    sg = best
    while sg:
        idx, prev = reach[sg]
        chosen.append(kids[idx])
        sg = prev
    return sorted(chosen)


def make_context(g: Graph, s: int) -> SsrpContext:
    if not g.unweighted:
        raise ValueError("the SSRP construction needs an unweighted graph")
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range")
    parent, depth = bfs_tree(g, s)
    missing = [v for v in range(g.n) if depth[v] < 0]
    if missing:
        raise ValueError(f"vertices unreachable from {s}: {missing[:10]}")
    n = g.n
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if parent[v] >= 0:
            children[parent[v]].append(v)
    order = sorted(range(n), key=lambda v: (depth[v], v))
    size = [1] * n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]

    # heavy-path walk first, then every other vertex in BFS order
    walk = [s]
    while True:
        u = walk[-1]
        heavy = [c for c in children[u] if 3 * size[c] > n]
        if not heavy:
            break
        walk.append(max(heavy, key=lambda c: (size[c], -c)))
    candidates = walk[::-1] + [v for v in order if v not in walk]
    for t in candidates:
        split = _split_at(n, t, children, size)
        if split is None:
            continue
        T = {t}
        for c in split:
            T.update(_subtree_members(children, c))
        S = (set(range(n)) - T) | {t}
        path = [t]
        while path[-1] != s:
            path.append(parent[path[-1]])
        path.reverse()
        P_edges = frozenset(g.edge_id(a, b) for a, b in zip(path, path[1:]))
        return SsrpContext(g, s, parent, depth, t, frozenset(S), frozenset(T), tuple(path), P_edges)
    raise ValueError(f"no balanced separator exists for this BFS tree (n={n})")


def num_levels(n: int) -> tuple[int, int]:
    """``(h, top)`` with ``h = floor(log2(n)/2)`` and ``top = floor(log2 n)``."""
    top = max(0, n.bit_length() - 1)
    return top // 2, top


def k_relevant_pairs(ctx: SsrpContext, k: int) -> list[tuple[int, int]]:
    """Brute-force enumeration over ``V(P) x V(T)``; pairs with infinite distance are skipped."""
    Dg = ctx.dist_gp()
    thr = 2 ** (k + 1)
    out = []
    for v in sorted(ctx.T):
        best = INF
        for u in ctx.P:
            d = Dg[u, v]
            if d != INF and d > thr and d < best:
                out.append((u, v))
            best = min(best, d)
    return out


def _eps_sssp(g: Graph, s: int, P_edges: frozenset[int], removed: set[int], bound: int):
    """Dijkstra over :class:`EpsDist`, stopping beyond ``bound`` units; ties by vertex id."""
    dist: dict[int, EpsDist] = {s: EpsDist(0, 0)}
    parent: dict[int, int] = {s: -1}
    heap = [(0, 0, s)]
    done = set()
    while heap:
        unit, eps, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, _, eid in g.out[u]:
            if v in removed or v in done:
                continue
            nd = EpsDist(unit, eps) + (EpsDist(0, 1) if eid in P_edges else EpsDist(1, 0))
            if nd.unit > bound:
                continue
            cur = dist.get(v)
            if cur is None or nd < cur:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd.unit, nd.eps, v))
    return dist, parent


def compute_b0(ctx: SsrpContext, k_max: int | None = None, stats: list | None = None) -> list[frozenset[int]]:
    """Pivot sets ``B_0 .. B_k_max`` from decremental removal of ``P`` vertices."""
    g = ctx.g
    if k_max is None:
        k_max = num_levels(g.n)[0]
    P = ctx.P
    out = []
    for k in range(k_max + 1):
        L = 2 ** k
        paths: list[tuple[int, ...]] = []
        removed: set[int] = set()
        for i in range(len(P) - 1, -1, -1):
            removed = set(P[i + 1:])
            dist, parent = _eps_sssp(g, ctx.s, ctx.P_edges, removed, L + 1)
            for v in sorted(dist):
                d = dist[v]
                if d.unit == L or (d.unit == L + 1 and d.eps == 0):
                    walk = [v]
                    while len(walk) <= L:
                        walk.append(parent[walk[-1]])
                    paths.append(tuple(reversed(walk)))
        B = frozenset(greedy_pivot_selection(paths, L))
        if stats is not None:
            stats.append({"k": k, "source": "b0", "paths": len(paths), "pivots": len(B)})
        out.append(B)
    return out


def compute_bk(ctx: SsrpContext, prev: Iterable[int], k: int, stats: list | None = None) -> frozenset[int]:
    """Pivot set for level ``k`` from BFS trees in ``G_P`` rooted at ``prev``."""
    g = ctx.g
    L = 2 ** k
    banned = ctx.P_edges
    paths: list[tuple[int, ...]] = []
    for u in sorted(prev):
        depth = {u: 0}
        parent = {u: -1}
        q = deque([u])
        while q:
            x = q.popleft()
            if depth[x] == L:
                continue
            for y, _, eid in g.out[x]:
                if eid in banned or y in depth:
                    continue
                depth[y] = depth[x] + 1
                parent[y] = x
                q.append(y)
        for v in sorted(depth):
            if depth[v] == L:
                walk = [v]
                while walk[-1] != u:
                    walk.append(parent[walk[-1]])
                paths.append(tuple(reversed(walk)))
    B = frozenset(greedy_pivot_selection(paths, L))
    if stats is not None:
        stats.append({"k": k, "source": "bk", "paths": len(paths), "pivots": len(B)})
    return B


def ssrp_hitting_chain(ctx: SsrpContext, stats: list | None = None) -> list[frozenset[int]]:
    h, top = num_levels(ctx.n)
    levels = compute_b0(ctx, h, stats)
    for k in range(h + 1, top + 1):
        levels.append(compute_bk(ctx, levels[-1], k, stats))
    return levels


@dataclass
class SsrpReport:
    k: int
    pairs: int
    violations: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_ssrp_hitting(ctx: SsrpContext, B_k: Iterable[int], k: int) -> SsrpReport:
    Dg = ctx.dist_gp()
    B = sorted(B_k)
    idx = np.array(B, dtype=int)
    pairs = k_relevant_pairs(ctx, k)
    bad = []
    for u, v in pairs:
        if not B:
            bad.append((u, v))
            continue
        du = Dg[u, idx]
        through = du + Dg[idx, v]
        if not np.any((through == Dg[u, v]) & (du <= 2 ** (k + 1))):
            bad.append((u, v))
    return SsrpReport(k, len(pairs), bad)


def chain_to_json(ctx: SsrpContext, levels: list[frozenset[int]]) -> str:
    return json.dumps({
        "version": FORMAT_VERSION,
        "source": ctx.s,
        "separator": ctx.t,
        "P": list(ctx.P),
        "levels": [{"k": k, "pivots": sorted(B)} for k, B in enumerate(levels)],
    }, sort_keys=True)
