"""Graph families that encode binary matrices in fault-tolerant diameters.

Two constructions are provided, each with a generator and a decoder:

* ``fdo-lb``: an ``N x N`` matrix ``X`` (first row and column all ones)
  becomes a digraph of diameter ``D``.  Failing the edge ``b_i -> c_j``
  keeps the diameter at ``D`` when ``X[i][j] = 1`` and raises it to
  ``(3D-1)/2`` (odd ``D``) or ``3D/2 - 1`` (even ``D``) otherwise.
* ``conn-lb``: ``alpha`` non-null ``2^f x 2^f`` matrices become a digraph
  in which failing a specific set of ``2f`` tree edges leaves the graph
  strongly connected exactly when the selected matrix entry is 1.

Vertex layout for ``fdo-lb`` (0-based, all indices ``i, j < N``, ``k < t``):
``a[k][i] = k*N + i``, ``b[i] = t*N + i``, ``c[j] = (t+1)*N + j``,
``d[k][j] = (t+2)*N + k*N + j``, then the reservoir ``V_R``.  For even ``D``
the first reservoir vertex is the relay ``v``.

Vertex layout for ``conn-lb``: block ``i`` occupies ``[i*K, (i+1)*K)``,
with the out-tree in heap order first (root ``s_i`` at offset 0, leaves at
offsets ``N-1 .. 2N-2``) and the in-tree in heap order after it (root
``t_i`` at offset ``2N-1``).  Padding vertices follow the last block.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .graph import Graph

Matrix = list[list[int]]


# ---------------------------------------------------------------- matrices


def format_matrix(X: Matrix) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in X) + "\n"


def parse_matrices(text: str) -> list[Matrix]:
    """Parse one or more 0/1 grids separated by blank lines; ``#`` starts a comment."""
    out: list[Matrix] = []
    cur: Matrix = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if cur:
                out.append(cur)
                cur = []
            continue
        toks = line.split() if " " in line else list(line)
        if any(t not in ("0", "1") for t in toks):
            raise ValueError(f"line {lineno}: matrix entries must be 0 or 1")
        row = [int(t) for t in toks]
        if cur and len(row) != len(cur[0]):
            raise ValueError(f"line {lineno}: ragged matrix row")
        cur.append(row)
    if cur:
        out.append(cur)
    for X in out:
        if len(X) != len(X[0]):
            raise ValueError(f"matrix is {len(X)}x{len(X[0])}, expected square")
    return out


def parse_matrix(text: str) -> Matrix:
    ms = parse_matrices(text)
    if len(ms) != 1:
        raise ValueError(f"expected one matrix, found {len(ms)}")
    return ms[0]


def random_admissible_matrix(N: int, rng: random.Random) -> Matrix:
    """Uniform ``N x N`` 0/1 matrix with all-ones first row and column."""
    return [[1 if i == 0 or j == 0 else rng.randint(0, 1) for j in range(N)] for i in range(N)]


def random_nonnull_matrix(N: int, rng: random.Random) -> Matrix:
    while True:
        X = [[rng.randint(0, 1) for _ in range(N)] for _ in range(N)]
        if any(map(any, X)):
            return X


# ---------------------------------------------------------------- fdo-lb


@dataclass
class FdoLbInstance:
    graph: Graph
    D: int
    N: int
    t: int
    X: Matrix
    bc_edge: list[list[int]]
    relay: int | None = None

    def a(self, k: int, i: int) -> int:
        return k * self.N + i

    def b(self, i: int) -> int:
        return self.t * self.N + i

    def c(self, j: int) -> int:
        return (self.t + 1) * self.N + j

    def d(self, k: int, j: int) -> int:
        return (self.t + 2) * self.N + k * self.N + j

    @property
    def failed_diameter(self) -> int:
        """Diameter after failing ``b_i -> c_j`` when ``X[i][j] = 0``."""
        return (3 * self.D - 1) // 2 if self.D % 2 else 3 * self.D // 2 - 1


def gen_fdo_lb(n: int, m: int, D: int, X: Matrix) -> FdoLbInstance:
    if not (n >= 4 and n * n >= m >= 4):
        raise ValueError("need n >= 4 and 4 <= m <= n^2")
    if m < n:
        # the dichotomy does not depend on it; only the Theta(m) edge count does
        warnings.warn(f"m={m} < n={n}: edge count is dominated by the reservoir", stacklevel=2)
    N = math.isqrt(m)
    if not (D >= 3 and n > D * N):
        raise ValueError(f"need 3 <= D < n/floor(sqrt(m)) = {n / N:.2f}")
    if len(X) != N or any(len(row) != N for row in X):
        raise ValueError(f"X must be {N}x{N}")
    if any(x not in (0, 1) for row in X for x in row):
        raise ValueError("X must be binary")
    if not all(X[0]) or not all(row[0] for row in X):
        raise ValueError("first row and column of X must be all ones")
    odd = D % 2 == 1
    t = (D - 1) // 2 if odd else D // 2 - 1
    core = (2 * t + 2) * N
    reservoir = n - core
    if reservoir < (0 if odd else 1):
        raise ValueError(f"n={n} too small for D={D}, N={N}")

    inst = FdoLbInstance(None, D, N, t, [list(r) for r in X], [[-1] * N for _ in range(N)])  # type: ignore[arg-type]
    A, B, C, Dd = inst.a, inst.b, inst.c, inst.d
    edges: list[tuple[int, int, int]] = []
    for k in range(t):
        for i in range(N):
            edges.append((A(k, i), A(k + 1, i) if k < t - 1 else B(i), 1))
    for j in range(N):
        edges.append((C(j), Dd(0, j), 1))
        for k in range(1, t):
            edges.append((Dd(k - 1, j), Dd(k, j), 1))
    for i in range(N):
        for j in range(N):
            inst.bc_edge[i][j] = len(edges)
            edges.append((B(i), C(j), 1))
    for i in range(N):
        for j in range(N):
            if X[i][j]:
                edges.append((A(t - 1, i), C(j), 1))
                edges.append((B(i), Dd(0, j), 1))
    back = [C(j) for j in range(N)] + [Dd(k, j) for k in range(t) for j in range(N)]
    first_r = core
    if odd:
        for x in back:
            for i in range(N):
                edges.append((x, A(0, i), 1))
    else:
        v = core
        inst.relay = v
        first_r = core + 1
        for x in back:
            edges.append((x, v, 1))
        for i in range(N):
            edges.append((v, A(0, i), 1))
    for r in range(first_r, n):
        edges.append((r, C(0), 1))
        edges.append((C(0), r, 1))
        edges.append((r, A(0, 0), 1))
    inst.graph = Graph(n, edges)
    return inst


def decode_fdo_lb(inst: FdoLbInstance, diam_query: Callable[[int], float]) -> Matrix:
    N = inst.N
    return [[1 if i == 0 or j == 0 else int(diam_query(inst.bc_edge[i][j]) == inst.D)
             for j in range(N)] for i in range(N)]


# ---------------------------------------------------------------- conn-lb


@dataclass
class ConnLbInstance:
    graph: Graph
    f: int
    Xs: list[Matrix]
    leaf_edge: list[dict[tuple[int, int], int]] = field(default_factory=list)

    @property
    def N(self) -> int:
        return 2 ** self.f

    @property
    def K(self) -> int:
        return 2 ** (self.f + 2) - 2

    @property
    def alpha(self) -> int:
        return len(self.Xs)

    def s(self, i: int) -> int:
        return i * self.K

    def t(self, i: int) -> int:
        return i * self.K + 2 * self.N - 1

    def left(self, i: int, h: int) -> int:
        """Heap position ``h`` of the out-tree of block ``i``."""
        return i * self.K + h

    def right(self, i: int, h: int) -> int:
        return i * self.K + 2 * self.N - 1 + h

    def leaf_l(self, i: int, j: int) -> int:
        return self.left(i, self.N - 1 + j)

    def leaf_r(self, i: int, j: int) -> int:
        return self.right(i, self.N - 1 + j)


def gen_conn_lb(n: int, f: int, Xs: Sequence[Matrix]) -> ConnLbInstance:
    """Build the ``conn-lb`` graph.

    On top of the tree, leaf and chain edges, every block vertex other than
    ``s_i`` gets an edge back to ``s_i``.  Without them a left leaf whose
    matrix row is all zero would have no out-edge at all, so the graph could
    never be strongly connected.  The back edges only enter ``s_i``, so they
    never create a new ``s_i -> t_i`` route and the encoding is unchanged.
    Padding vertices ``p`` beyond ``alpha * K`` get ``t_alpha -> p -> s_1``.
    """
    if f < 1:
        raise ValueError("f must be at least 1")
    N, K = 2 ** f, 2 ** (f + 2) - 2
    alpha = n // K
    if alpha < 1:
        raise ValueError(f"n={n} below block size K={K}")
    if len(Xs) != alpha:
        raise ValueError(f"n={n} gives alpha={alpha} blocks but {len(Xs)} matrices were given")
    for X in Xs:
        if len(X) != N or any(len(r) != N for r in X):
            raise ValueError(f"each matrix must be {N}x{N}")
        if any(x not in (0, 1) for r in X for x in r):
            raise ValueError("matrices must be binary")
        if not any(map(any, X)):
            raise ValueError("matrices must be non-null")
    inst = ConnLbInstance(None, f, [[list(r) for r in X] for X in Xs])  # type: ignore[arg-type]
    edges: list[tuple[int, int, int]] = []
    for i in range(alpha):
        for h in range(N - 1):
            for child in (2 * h + 1, 2 * h + 2):
                edges.append((inst.left(i, h), inst.left(i, child), 1))
        for h in range(N - 1):
            for child in (2 * h + 1, 2 * h + 2):
                edges.append((inst.right(i, child), inst.right(i, h), 1))
        idx: dict[tuple[int, int], int] = {}
        for j1 in range(N):
            for j2 in range(N):
                if Xs[i][j1][j2]:
                    idx[(j1, j2)] = len(edges)
                    edges.append((inst.leaf_l(i, j1), inst.leaf_r(i, j2), 1))
        inst.leaf_edge.append(idx)
        if i > 0:
            edges.append((inst.t(i - 1), inst.s(i), 1))
    t_last = inst.t(alpha - 1)
    for i in range(alpha):
        for u in range(i * K + 1, (i + 1) * K):
            if u != t_last:
                edges.append((u, inst.s(i), 1))
    for v in range(n):
        if v != t_last:
            edges.append((t_last, v, 1))
    for p in range(alpha * K, n):
        edges.append((p, inst.s(0), 1))
    inst.graph = Graph(n, edges)
    return inst


def _off_path_edges(g: Graph, heap_node: Callable[[int], int], N: int, j: int, down: bool) -> list[int]:
    # walk from the leaf with heap index N-1+j up to the root, collecting sibling edges
    out = []
    h = N - 1 + j
    while h > 0:
        parent = (h - 1) // 2
        sib = h + 1 if h % 2 == 1 else h - 1
        u, v = heap_node(parent), heap_node(sib)
        out.append(g.edge_id(u, v) if down else g.edge_id(v, u))
        h = parent
    return out


def failure_set(inst: ConnLbInstance, i: int, j1: int, j2: int) -> frozenset[int]:
    N = inst.N
    if not (0 <= i < inst.alpha and 0 <= j1 < N and 0 <= j2 < N):
        raise ValueError("index out of range")
    g = inst.graph
    F = _off_path_edges(g, lambda h: inst.left(i, h), N, j1, True)
    F += _off_path_edges(g, lambda h: inst.right(i, h), N, j2, False)
    return frozenset(F)


def decode_conn_lb(inst: ConnLbInstance, connected_query: Callable[[frozenset[int]], bool]) -> list[Matrix]:
    N = inst.N
    return [[[int(bool(connected_query(failure_set(inst, i, j1, j2)))) for j2 in range(N)]
             for j1 in range(N)] for i in range(inst.alpha)]
