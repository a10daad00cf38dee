"""Single-failure diameter oracle with (1 + eps) stretch.

The oracle keeps three things: the base diameter, the strong bridges
(answered with ``INF``), and a table ``phi`` for the edges whose failure
lengthens some pivot-to-pivot distance.  Every other edge gets the flat
answer ``(1 + eps) * diam``.

Pivots either come from independent sampling or from one level of a
:class:`~ftoracle.hdph.PivotHierarchy`.
"""

from __future__ import annotations

import json
import logging
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import INF, ApspData, Graph, apsp as build_apsp, diameter, is_strongly_connected, strong_bridges
from .hdph import PivotHierarchy

log = logging.getLogger(__name__)

FORMAT_VERSION = 1


def parse_fraction(text) -> Fraction:
    """``"1/2"``, ``"0.5"`` and ``2`` all work; floats go through their decimal repr."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        return Fraction(repr(text))
    return Fraction(str(text).strip())


def sample_pivots(g: Graph, L, c, seed: int) -> set[int]:
    """Keep each vertex with probability ``c ln n / L`` using ``random.Random(seed)``."""
    n = g.n
    if n <= 1:
        return set(range(n))
    target = c * math.log(n)
    if L < target:
        raise ValueError(f"L={L} below c*ln(n)={target:.3f}")
    p = min(1.0, target / float(L))
    rng = random.Random(seed)
    return {v for v in range(n) if rng.random() < p}


def pivot_level(h: PivotHierarchy, eps, D) -> int:
    """Largest ``i`` with ``C**i < eps * D / 2``; raises when ``eps * D / 2 <= 1``."""
    half = parse_fraction(eps) * D / 2
    if half <= 1:
        raise ValueError(f"eps*D/2 = {half} <= 1: no hierarchy level applies")
    i = 0
    while h.C ** (i + 1) < half:
        i += 1
    return i


def derandomized_pivots(g: Graph, h: PivotHierarchy, eps, D=None) -> set[int]:
    if h.C != 2:
        raise ValueError("derandomized pivots need a hierarchy built with C = 2")
    D = diameter(g) if D is None else D
    i = pivot_level(h, eps, D)
    if i >= len(h.levels):
        # no level that high was built: C**top >= n > D already covers it
        i = len(h.levels) - 1
    return set(h.levels[i])


@dataclass
class FdoOracle:
    diam0: float
    eps: Fraction
    X: dict[int, float]
    Y: frozenset[int]
    B: frozenset[int]
    n: int
    Xv: dict[int, float] = field(default_factory=dict)
    Yv: frozenset[int] = frozenset()
    vertex_failures: bool = False

    @property
    def b(self) -> Fraction:
        return Fraction(self.n) / (self.eps * self.diam0)

    @property
    def slack(self) -> Fraction:
        """``n / b``, i.e. ``eps * diam0``."""
        return self.eps * self.diam0

    def to_json(self) -> str:
        doc = {
            "version": FORMAT_VERSION,
            "n": self.n,
            "diam0": self.diam0,
            "eps": f"{self.eps.numerator}/{self.eps.denominator}",
            "X": [{"edge": e, "phi": _enc(self.X[e])} for e in sorted(self.X)],
            "Y": sorted(self.Y),
            "B": sorted(self.B),
        }
        if self.vertex_failures:
            doc["Xv"] = [{"vertex": v, "phi": _enc(self.Xv[v])} for v in sorted(self.Xv)]
            doc["Yv"] = sorted(self.Yv)
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FdoOracle":
        doc = json.loads(text)
        if doc.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported oracle version {doc.get('version')!r}")
        vf = "Xv" in doc
        return cls(
            diam0=doc["diam0"],
            eps=Fraction(doc["eps"]),
            X={r["edge"]: _dec(r["phi"]) for r in doc["X"]},
            Y=frozenset(doc["Y"]),
            B=frozenset(doc["B"]),
            n=doc["n"],
            Xv={r["vertex"]: _dec(r["phi"]) for r in doc.get("Xv", [])},
            Yv=frozenset(doc.get("Yv", [])),
            vertex_failures=vf,
        )


def _enc(x):
    return "inf" if x == INF else x


def _dec(x):
    return INF if x == "inf" else x


def _vertex_bridges(g: Graph) -> set[int]:
    from .graph import _reach

    out = set()
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        if not rest:
            continue
        dead = {e for e in range(g.m) if v in g.edges[e][:2]}
        r = rest[0]
        fw = _reach(g.out, g.n, r, dead, True)
        bw = _reach(g.inc, g.n, r, dead, False)
        if fw < g.n - 1 or bw < g.n - 1:
            out.add(v)
    return out


def build_fdo(g: Graph, eps, B: Iterable[int], dso, apsp: ApspData | None = None,
              vertex_failures: bool = False) -> FdoOracle:
    """Precompute the X / Y tables for pivot set ``B`` using exact oracle ``dso``."""
    eps = parse_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not is_strongly_connected(g):
        raise ValueError("graph is not strongly connected")
    apsp = apsp if apsp is not None else getattr(dso, "apsp", None) or build_apsp(g)
    B = sorted(set(B))
    D = max((apsp.d(s, t) for s in range(g.n) for t in range(g.n)), default=0)
    if D == 0:
        raise ValueError("diameter 0: single-vertex graph has no edges to fail")
    if eps * D / 2 <= 1:
        warnings.warn(f"eps*D/2 = {eps * D / 2} <= 1; the stretch argument is vacuous here",
                      stacklevel=2)

    H: set[int] = set()
    for b in B:
        H.update(apsp.tree_edges(b))
    X: dict[int, float] = {}
    for e in sorted(H):
        hit = False
        worst = D
        for b1 in B:
            for b2 in B:
                if b1 == b2:
                    continue
                d = dso.distance(b1, b2, e)
                if d > apsp.d(b1, b2):
                    hit = True
                if d > worst:
                    worst = d
        if hit:
            X[e] = worst
    Y = frozenset(strong_bridges(g))

    Xv: dict[int, float] = {}
    Yv: frozenset[int] = frozenset()
    if vertex_failures:
        Hv = {v for e in H for v in g.edges[e][:2]}
        for v in sorted(Hv):
            hit = False
            worst = D
            for b1 in B:
                for b2 in B:
                    if b1 == b2 or v in (b1, b2):
                        continue
                    d = dso.vertex_distance(b1, b2, v)
                    if d > apsp.d(b1, b2):
                        hit = True
                    if d > worst:
                        worst = d
            if hit:
                Xv[v] = worst
        Yv = frozenset(_vertex_bridges(g))

    log.info("fdo: n=%d |B|=%d |H|=%d |X|=%d |Y|=%d", g.n, len(B), len(H), len(X), len(Y))
    return FdoOracle(D, eps, X, Y, frozenset(B), g.n, Xv, Yv, vertex_failures)


def query_fdo(o: FdoOracle, e: int):
    if e in o.Y:
        return INF
    phi = o.X.get(e)
    if phi is None:
        return o.diam0 + o.slack
    if phi == INF:
        return INF
    return phi + o.slack


def query_fdo_vertex(o: FdoOracle, v: int):
    """Estimate of ``diam(G - v)`` (the diameter among the remaining vertices)."""
    if not o.vertex_failures:
        raise ValueError("oracle was built without vertex failures")
    if v in o.Yv:
        return INF
    phi = o.Xv.get(v)
    if phi is None:
        return o.diam0 + o.slack
    if phi == INF:
        return INF
    return phi + o.slack


def near_linear_eps(n: int, D) -> Fraction:
    """Preset for the near-linear-space regime: ``eps = n**(5/6) / D``."""
    return Fraction(n ** (5 / 6)).limit_denominator(10**6) / D


def check_sparse_regime(n: int, m: int, D, eps) -> bool:
    """Warn when ``D`` does not clearly exceed ``n**(4/3) log n / (eps sqrt m)``.

    The actual condition is asymptotic, so this is advisory only.
    """
    threshold = n ** (4 / 3) * math.log(max(n, 2)) / (float(parse_fraction(eps)) * math.sqrt(max(m, 1)))
    ok = D > threshold
    if not ok:
        warnings.warn(f"diameter {D} below sparse-regime threshold {threshold:.1f}", stacklevel=2)
    return ok


def fdo_pivots(g: Graph, eps, how: str = "hdph", seed: int = 0, c=3, apsp: ApspData | None = None,
               dso=None) -> tuple[set[int], dict]:
    """Pick pivots by ``"sample"`` or ``"hdph"``; returns ``(B, info)``.

    Falls back to ``B = V`` when the diameter is too small for the chosen
    scheme (``eps * D / 2 <= 1`` for the hierarchy, ``L < c ln n`` for sampling).
    """
    from .dso import ReferenceDso
    from .hdph import hdph

    eps = parse_fraction(eps)
    apsp = apsp if apsp is not None else build_apsp(g)
    D = max(apsp.d(s, t) for s in range(g.n) for t in range(g.n))
    L = eps * D / 2
    V = set(range(g.n))
    if how == "sample":
        if g.n > 1 and L < c * math.log(g.n):
            return V, {"scheme": "sample", "fallback": True, "L": str(L)}
        return sample_pivots(g, L, c, seed), {"scheme": "sample", "fallback": False, "L": str(L)}
    if how == "hdph":
        if L <= 1:
            return V, {"scheme": "hdph", "fallback": True, "L": str(L)}
        probe = PivotHierarchy(Fraction(2), [V])
        i = pivot_level(probe, eps, D)
        if i <= 2:
            return V, {"scheme": "hdph", "fallback": False, "level": i, "L": str(L)}
        dso = dso if dso is not None else ReferenceDso(g, apsp)
        h = hdph(apsp, dso, 2, max_level=i)
        return derandomized_pivots(g, h, eps, D), {"scheme": "hdph", "fallback": False, "level": i,
                                                   "L": str(L)}
    raise ValueError(f"unknown pivot scheme {how!r}")
