"""Directed graphs, unique shortest paths, and brute-force replacement paths.

Shortest paths are made globally unique by perturbing the weight of edge
``i`` by ``2**-(i+1)``.  The perturbation of a path is the binary fraction
whose set bits are exactly the edge ids on the path, so it is stored as an
integer mask with edge ``i`` at bit ``m-1-i``; comparing masks as integers
compares the fractions.  Two distinct simple paths have distinct edge sets
and therefore never tie.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

INF = math.inf


class GraphFormatError(ValueError):
    """Raised by :func:`parse_graph` for malformed input; carries the line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class PerturbedDist(NamedTuple):
    """Distance with an edge-set tiebreak.  Tuple order is the lexicographic order."""

    base: float  # int, or INF when unreachable
    tiebreak: int

    def __add__(self, other):  # type: ignore[override]
        if self.base == INF or other.base == INF:
            return UNREACHABLE
        return PerturbedDist(self.base + other.base, self.tiebreak + other.tiebreak)

    @property
    def finite(self) -> bool:
        return self.base != INF


UNREACHABLE = PerturbedDist(INF, 0)
ZERO = PerturbedDist(0, 0)


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]
    length: int

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self, g: "Graph") -> list[int]:
        return [g.edge_id(u, v) for u, v in zip(self.vertices, self.vertices[1:])]

    def __add__(self, other: "Path") -> "Path":
        if self.vertices[-1] != other.vertices[0]:
            raise ValueError("paths do not meet")
        return Path(self.vertices + other.vertices[1:], self.length + other.length)


@dataclass(eq=False)
class Graph:
    n: int
    edges: list[tuple[int, int, int]]
    directed: bool = True
    M: int = field(default=0)

    def __post_init__(self):
        self.edges = [tuple(e) for e in self.edges]
        self._index: dict[tuple[int, int], int] = {}
        self.out: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        self.inc: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v, w) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {eid}: vertex id out of range")
            if u == v:
                raise ValueError(f"edge {eid}: self-loop at {u}")
            if w < 1:
                raise ValueError(f"edge {eid}: weight below 1")
            if (u, v) in self._index:
                raise ValueError(f"edge {eid}: duplicate edge {u}->{v}")
            self._index[(u, v)] = eid
            self.out[u].append((v, w, eid))
            self.inc[v].append((u, w, eid))
        max_w = max((w for _, _, w in self.edges), default=1)
        if self.M == 0:
            self.M = max_w
        elif max_w > self.M:
            raise ValueError(f"weight {max_w} exceeds bound M={self.M}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        return self._index[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def bit(self, eid: int) -> int:
        return 1 << (self.m - 1 - eid)

    @property
    def unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m} directed"]
        lines += [f"{u} {v} {w}" for u, v, w in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if header is None:
            if len(tok) != 3 or tok[2] != "directed":
                raise GraphFormatError(lineno, "expected header 'n m directed'")
            try:
                n, m = int(tok[0]), int(tok[1])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer n or m") from None
            if n < 0 or m < 0:
                raise GraphFormatError(lineno, "negative n or m")
            header = (n, m)
            continue
        if len(tok) != 3:
            raise GraphFormatError(lineno, f"expected 'u v w', got {len(tok)} tokens")
        try:
            u, v, w = (int(t) for t in tok)
        except ValueError:
            raise GraphFormatError(lineno, "non-integer token") from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, f"vertex id out of range (n={n})")
        if u == v:
            raise GraphFormatError(lineno, "self-loop")
        if w < 1:
            raise GraphFormatError(lineno, "weight below 1")
        if (u, v) in seen:
            raise GraphFormatError(lineno, f"duplicate edge {u}->{v}")
        seen.add((u, v))
        edges.append((u, v, w))
    if header is None:
        raise GraphFormatError(0, "missing header")
    if len(edges) != header[1]:
        raise GraphFormatError(0, f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def sssp(g: Graph, s: int, banned: Iterable[int] = (), banned_vertices: Iterable[int] = (),
         bound: float = INF) -> tuple[list[PerturbedDist], list[int]]:
    """Dijkstra under perturbed weights, from ``s`` in ``g`` minus the banned items.

    Vertices whose distance base exceeds ``bound`` are left unreachable.
    Returns ``(dist, parent)`` with ``parent[v] == -1`` for ``s`` and unreachable ``v``.
    """
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range")
    banned = set(banned)
    dead = set(banned_vertices)
    m = g.m
    dist = [UNREACHABLE] * g.n
    parent = [-1] * g.n
    if s in dead:
        return dist, parent
    dist[s] = ZERO
    heap = [(0, 0, s)]
    done = [False] * g.n
    while heap:
        b, mask, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w, eid in g.out[u]:
            if eid in banned or v in dead or done[v]:
                continue
            nb = b + w
            if nb > bound:
                continue
            nm = mask | (1 << (m - 1 - eid))
            dv = dist[v]
            if nb < dv.base or (nb == dv.base and nm < dv.tiebreak):
                dist[v] = PerturbedDist(nb, nm)
                parent[v] = u
                heapq.heappush(heap, (nb, nm, v))
    return dist, parent


def walk_parents(parent: list[int], s: int, t: int) -> list[int]:
    out = [t]
    while t != s:
        t = parent[t]
        if t < 0:
            raise ValueError("target not reachable in parent tree")
        out.append(t)
    out.reverse()
    return out


class ApspData:
    """All-pairs unique shortest paths: ``dist[s][t]`` and ``pred[s][t]``."""

    def __init__(self, g: Graph):
        self.g = g
        self.dist: list[list[PerturbedDist]] = []
        self.pred: list[list[int]] = []
        for s in range(g.n):
            d, p = sssp(g, s)
            self.dist.append(d)
            self.pred.append(p)
        self._paths: dict[tuple[int, int], tuple[int, ...]] = {}
        self._path_edges: dict[tuple[int, int], frozenset[int]] = {}

    def d(self, s: int, t: int) -> float:
        return self.dist[s][t].base

    def path(self, s: int, t: int) -> Path | None:
        if not self.dist[s][t].finite:
            return None
        key = (s, t)
        vs = self._paths.get(key)
        if vs is None:
            vs = tuple(walk_parents(self.pred[s], s, t))
            self._paths[key] = vs
        return Path(vs, self.dist[s][t].base)

    def path_edges(self, s: int, t: int) -> frozenset[int]:
        key = (s, t)
        es = self._path_edges.get(key)
        if es is None:
            p = self.path(s, t)
            es = frozenset(p.edges(self.g)) if p is not None else frozenset()
            self._path_edges[key] = es
        return es

    def tree_edges(self, s: int) -> list[int]:
        """Edge ids of the shortest-path tree rooted at ``s``, sorted."""
        g = self.g
        return sorted(g.edge_id(p, v) for v, p in enumerate(self.pred[s]) if p >= 0)


def apsp(g: Graph) -> ApspData:
    return ApspData(g)


def replacement_path(g: Graph, s: int, t: int, F: Iterable[int] = (),
                     vertices: Iterable[int] = ()) -> Path | float:
    """Unique shortest ``s``-``t`` path in ``g - F`` (edges and optionally vertices), or INF."""
    dead = set(vertices)
    if s in dead or t in dead:
        return INF
    dist, parent = sssp(g, s, F, dead)
    if not dist[t].finite:
        return INF
    return Path(tuple(walk_parents(parent, s, t)), dist[t].base)


def path_length(p: Path | float) -> float:
    return p if isinstance(p, float) else p.length


def eccentricity(g: Graph, s: int, F: Iterable[int] = ()) -> float:
    dist, _ = sssp(g, s, F)
    return max(d.base for d in dist)


def diameter(g: Graph, F: Iterable[int] = ()) -> float:
    F = set(F)
    best = 0
    for s in range(g.n):
        e = eccentricity(g, s, F)
        if e == INF:
            return INF
        best = max(best, e)
    return best


def _reach(adj, n: int, start: int, banned: set[int], forward: bool) -> int:
    seen = [False] * n
    seen[start] = True
    stack = [start]
    count = 1
    while stack:
        u = stack.pop()
        for v, _, eid in adj[u]:
            if eid in banned or seen[v]:
                continue
            seen[v] = True
            count += 1
            stack.append(v)
    return count


def is_strongly_connected(g: Graph, F: Iterable[int] = ()) -> bool:
    if g.n <= 1:
        return True
    banned = set(F)
    return (_reach(g.out, g.n, 0, banned, True) == g.n
            and _reach(g.inc, g.n, 0, banned, False) == g.n)


def strong_bridges(g: Graph) -> set[int]:
    """Edges whose removal destroys strong connectivity (one double sweep per edge)."""
    if not is_strongly_connected(g):
        raise ValueError("graph is not strongly connected")
    return {e for e in range(g.m) if not is_strongly_connected(g, (e,))}


def bfs_distances(g: Graph, s: int, banned: set[int] | frozenset = frozenset(),
                  dead: set[int] | frozenset = frozenset()) -> list[float]:
    """Plain hop-count BFS, ignoring weights."""
    dist = [INF] * g.n
    if s in dead:
        return dist
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for v, _, eid in g.out[u]:
            if dist[v] == INF and eid not in banned and v not in dead:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def plain_distances(g: Graph, s: int, banned: set[int] | frozenset = frozenset(),
                    dead: set[int] | frozenset = frozenset()) -> list[float]:
    """Textbook Dijkstra with integer weights and no perturbation."""
    if g.M == 1:
        return bfs_distances(g, s, banned, dead)
    dist = [INF] * g.n
    if s in dead:
        return dist
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w, eid in g.out[u]:
            if eid in banned or v in dead:
                continue
            if d + w < dist[v]:
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    return dist


def distance_matrix(g: Graph, banned: Iterable[int] = (), dead: Iterable[int] = ()):
    """All-pairs plain distances as a float numpy array (``inf`` when unreachable)."""
    import numpy as np

    banned = frozenset(banned)
    dead = frozenset(dead)
    return np.array([plain_distances(g, s, banned, dead) for s in range(g.n)], dtype=float)


@dataclass(frozen=True)
class SplitGraph:
    """Vertex ``v`` becomes ``v_in = 2v`` and ``v_out = 2v+1`` joined by a weight-1 edge.

    Original edge ``(u, v, w)`` becomes ``(u_out, v_in, 2w - 1)``, so every
    ``s_in``-``t_in`` distance is exactly twice the original distance.
    """

    graph: Graph
    vertex_edge: tuple[int, ...]

    def to_original(self, vertices: Iterable[int]) -> tuple[int, ...]:
        return tuple(x // 2 for x in vertices if x % 2 == 0)


def split_vertices(g: Graph) -> SplitGraph:
    edges = [(2 * v, 2 * v + 1, 1) for v in range(g.n)]
    edges += [(2 * u + 1, 2 * v, 2 * w - 1) for u, v, w in g.edges]
    sg = Graph(2 * g.n, edges, M=max(1, 2 * g.M - 1))
    return SplitGraph(sg, tuple(range(g.n)))
