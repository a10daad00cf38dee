"""Hierarchical double-pivot hitting sets and a brute-force verifier.

Level ``i`` of the hierarchy is a vertex set ``B_i`` such that every
(replacement) distance ``d(s, t, f)`` in ``(C**i, C**(i+1)]`` is realised by
some path through a vertex of ``B_i``.  Levels 0-2 are all of ``V``; each
later level hits the shortest and replacement paths between pivots of the
three previous levels.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import INF, ApspData, Graph, distance_matrix
from .hitting import greedy_pivot_selection

FORMAT_VERSION = 1


def _num(x) -> Fraction:
    return Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(10**6)


@dataclass
class PivotHierarchy:
    C: Fraction
    levels: list[frozenset[int]]
    include_vertex_failures: bool = False
    stats: list[dict] = field(default_factory=list)

    def window(self, i: int) -> tuple[Fraction, Fraction]:
        return self.C ** i, self.C ** (i + 1)

    def to_json(self) -> str:
        doc = {
            "version": FORMAT_VERSION,
            "C": str(self.C),
            "vertex_failures": self.include_vertex_failures,
            "levels": [
                {"i": i, "r_lo": str(self.window(i)[0]), "r_hi": str(self.window(i)[1]),
                 "pivots": sorted(B)}
                for i, B in enumerate(self.levels)
            ],
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PivotHierarchy":
        doc = json.loads(text)
        if doc.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported hierarchy version {doc.get('version')!r}")
        levels = [frozenset(lv["pivots"]) for lv in sorted(doc["levels"], key=lambda lv: lv["i"])]
        return cls(Fraction(doc["C"]), levels, doc.get("vertex_failures", False))


def num_levels(n: int, C: Fraction) -> int:
    """``ceil(log_C n)`` computed exactly: smallest k with C**k >= n."""
    k = 0
    while C ** k < n:
        k += 1
    return k


def hdph(apsp: ApspData, dso, C=2, include_vertex_failures: bool = False,
         max_level: int | None = None) -> PivotHierarchy:
    """Run the hierarchy construction with ``apsp`` data and an exact path-reporting ``dso``."""
    C = _num(C)
    if C < Fraction(3, 2):
        raise ValueError("C must be at least 3/2")
    g = apsp.g
    n = g.n
    top = num_levels(n, C)
    if max_level is not None:
        top = min(top, max_level)
    V = frozenset(range(n))
    levels: list[frozenset[int]] = [V] * min(3, top + 1)
    stats: list[dict] = [{"i": i, "paths": 0, "pivots": n} for i in range(len(levels))]
    for i in range(3, top + 1):
        lo, hi = C ** (i - 6), C ** (i + 1)
        U = sorted(levels[i - 3] | levels[i - 2] | levels[i - 1])
        paths: list[tuple[int, ...]] = []
        for x in U:
            for y in U:
                if x == y:
                    continue
                d = apsp.d(x, y)
                if d > hi:
                    continue
                p = apsp.path(x, y)
                if d > lo:
                    paths.append(p.vertices)
                for e in p.edges(g):
                    de = dso.distance(x, y, e)
                    if lo < de <= hi:
                        paths.append(dso.path(x, y, e).vertices)
                if include_vertex_failures:
                    for v in p.vertices:
                        dv = dso.vertex_distance(x, y, v)
                        if lo < dv <= hi:
                            paths.append(dso.vertex_path(x, y, v).vertices)
        L = math.ceil(lo)
        B = frozenset(greedy_pivot_selection(paths, L))
        levels.append(B)
        stats.append({"i": i, "paths": len(paths), "L": L, "pivots": len(B)})
    return PivotHierarchy(C, levels, include_vertex_failures, stats)


@dataclass
class HierarchyReport:
    violations: list[tuple] = field(default_factory=list)
    sizes: list[int] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_matrix(Dm: np.ndarray, h: PivotHierarchy, tag, report: HierarchyReport,
                  skip: int | None = None) -> None:
    for i, B in enumerate(h.levels):
        lo, hi = h.window(i)
        mask = (Dm > float(lo)) & (Dm <= float(hi))
        if skip is not None:
            mask[skip, :] = False
            mask[:, skip] = False
        if not mask.any():
            continue
        report.checked += int(mask.sum())
        if not B:
            for s, t in zip(*np.nonzero(mask)):
                report.violations.append((i, int(s), int(t), tag))
            continue
        idx = np.array(sorted(B))
        best = (Dm[:, idx][:, :, None] + Dm[idx, :][None, :, :]).min(axis=1)
        bad = mask & (best != Dm)
        for s, t in zip(*np.nonzero(bad)):
            report.violations.append((i, int(s), int(t), tag))


def verify_hierarchy(g: Graph, h: PivotHierarchy, vertex_failures: bool | None = None) -> HierarchyReport:
    """Exhaustive check of the hitting identity at every level.

    Uses plain all-pairs distances of ``G``, ``G - e`` for every edge and, when
    enabled, ``G - v`` for every vertex; tags are ``None``, ``("e", id)`` and
    ``("v", id)``.
    """
    if vertex_failures is None:
        vertex_failures = h.include_vertex_failures
    report = HierarchyReport(sizes=[len(B) for B in h.levels])
    _check_matrix(distance_matrix(g), h, None, report)
    for e in range(g.m):
        _check_matrix(distance_matrix(g, banned=(e,)), h, ("e", e), report)
    if vertex_failures:
        for v in range(g.n):
            _check_matrix(distance_matrix(g, dead=(v,)), h, ("v", v), report, skip=v)
    return report
