"""Seeded random graph families used by tests, the CLI, and the acceptance suite."""

from __future__ import annotations

import random

from .graph import Graph, is_strongly_connected


def random_digraph(n: int, m: int, seed: int, max_weight: int = 1) -> Graph:
    """Uniform digraph with exactly ``m`` distinct non-loop edges."""
    if m > n * (n - 1):
        raise ValueError(f"m={m} exceeds n(n-1)={n * (n - 1)}")
    rng = random.Random(seed)
    pairs: set[tuple[int, int]] = set()
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or (u, v) in pairs:
            continue
        pairs.add((u, v))
        edges.append((u, v, rng.randint(1, max_weight)))
    return Graph(n, edges)


def random_strongly_connected(n: int, m: int, seed: int, max_weight: int = 1,
                              max_tries: int = 10_000) -> Graph:
    """Rejection-sample :func:`random_digraph` until strongly connected.

    Attempt ``k`` uses seed ``seed * max_tries + k`` so every seed maps to a
    reproducible graph.
    """
    for k in range(max_tries):
        g = random_digraph(n, m, seed * max_tries + k, max_weight)
        if is_strongly_connected(g):
            return g
    raise RuntimeError(f"no strongly connected sample after {max_tries} tries")


def random_dag(n: int, m: int, seed: int, max_weight: int = 1, source: int = 0) -> Graph:
    """Random DAG over a shuffled order with ``source`` first; every vertex reachable.

    Each non-source vertex gets one in-edge from an earlier vertex, then the
    remaining edges are added uniformly among forward pairs.
    """
    if m < n - 1 or m > n * (n - 1) // 2:
        raise ValueError("need n-1 <= m <= n(n-1)/2")
    rng = random.Random(seed)
    rest = [v for v in range(n) if v != source]
    rng.shuffle(rest)
    order = [source] + rest
    pairs: set[tuple[int, int]] = set()
    edges = []
    for i in range(1, n):
        u = order[rng.randrange(i)]
        pairs.add((u, order[i]))
        edges.append((u, order[i], rng.randint(1, max_weight)))
    while len(edges) < m:
        i, j = sorted(rng.sample(range(n), 2))
        u, v = order[i], order[j]
        if (u, v) in pairs:
            continue
        pairs.add((u, v))
        edges.append((u, v, rng.randint(1, max_weight)))
    return Graph(n, edges)


def cycle_with_chords(n: int, chords: int, seed: int, span: int = 3) -> Graph:
    """Directed Hamiltonian cycle plus short forward chords; large diameter, few bridges."""
    rng = random.Random(seed)
    edges = [(i, (i + 1) % n, 1) for i in range(n)]
    pairs = {(u, v) for u, v, _ in edges}
    tries = 0
    while len(edges) < n + chords and tries < 100 * (chords + 1):
        tries += 1
        u = rng.randrange(n)
        v = (u + rng.randint(2, span)) % n
        if u == v or (u, v) in pairs:
            continue
        pairs.add((u, v))
        edges.append((u, v, 1))
    return Graph(n, edges)


def random_rooted_digraph(n: int, m: int, seed: int, root: int = 0, max_weight: int = 1) -> Graph:
    """Random digraph in which every vertex is reachable from ``root``.

    A random out-arborescence from ``root`` is laid down first (each vertex
    attaches to a uniformly chosen earlier vertex of a shuffled order), then
    the remaining edges are uniform over all ordered pairs.
    """
    if m < n - 1 or m > n * (n - 1):
        raise ValueError("need n-1 <= m <= n(n-1)")
    rng = random.Random(seed)
    rest = [v for v in range(n) if v != root]
    rng.shuffle(rest)
    order = [root] + rest
    pairs: set[tuple[int, int]] = set()
    edges = []
    for i in range(1, n):
        u = order[rng.randrange(i)]
        pairs.add((u, order[i]))
        edges.append((u, order[i], rng.randint(1, max_weight)))
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or (u, v) in pairs:
            continue
        pairs.add((u, v))
        edges.append((u, v, rng.randint(1, max_weight)))
    return Graph(n, edges)
