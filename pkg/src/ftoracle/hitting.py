"""Greedy hitting sets over vertex sequences."""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence


def greedy_pivot_selection(paths: Iterable[Sequence[int]], L: int) -> set[int]:
    """Pick vertices until every path is hit, always taking the vertex in most unhit paths.

    Each path is first cut to its first ``L`` vertices and duplicates are
    dropped.  Ties go to the smallest vertex id.  For ``q`` paths over a
    universe of ``n`` vertices the result has at most ``ceil((n/L)(ln q + 1))``
    vertices.
    """
    if L < 1:
        raise ValueError("L must be positive")
    sets: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for p in paths:
        p = tuple(p)
        if len(set(p)) < L:
            raise ValueError(f"path with fewer than L={L} distinct vertices: {p}")
        cut: list[int] = []
        for v in p:
            if v not in cut:
                cut.append(v)
                if len(cut) == L:
                    break
        key = tuple(cut)
        if key not in seen:
            seen.add(key)
            sets.append(key)

    members: dict[int, list[int]] = {}
    for idx, s in enumerate(sets):
        for v in s:
            members.setdefault(v, []).append(idx)
    count = {v: len(ix) for v, ix in members.items()}
    heap = [(-c, v) for v, c in count.items()]
    heapq.heapify(heap)
    hit = [False] * len(sets)
    remaining = len(sets)
    chosen: set[int] = set()
    while remaining:
        c, v = heapq.heappop(heap)
        if -c != count[v]:
            if count[v] > 0:
                heapq.heappush(heap, (-count[v], v))
            continue
        chosen.add(v)
        count[v] = 0
        for idx in members[v]:
            if hit[idx]:
                continue
            hit[idx] = True
            remaining -= 1
            for u in sets[idx]:
                if u != v:
                    count[u] -= 1
    return chosen
