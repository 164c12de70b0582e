"""Weighted undirected graphs over metric point ids, plus path/tree helpers.

All stored edge weights are produced by the scalar MetricSpace.distance path
so they compare bit-equal against later lookups.
"""
from __future__ import annotations

import heapq
import math
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DisconnectedInput, InvariantViolation, NotATree

HOP_ROUNDS_CAP = 512


class SpannerGraph:
    """Undirected weighted graph; edge insertion is idempotent."""

    def __init__(self, n: int):
        self.n = n
        self.adj: List[Dict[int, float]] = [dict() for _ in range(n)]
        self._num_edges = 0

    def add_edge(self, u: int, v: int, w: float) -> bool:
        """Insert u-v with weight w; returns False if already present."""
        if u == v:
            raise InvariantViolation(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvariantViolation(f"edge ({u},{v}) out of range")
        if v in self.adj[u]:
            return False
        self.adj[u][v] = w
        self.adj[v][u] = w
        self._num_edges += 1
        return True

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def weight(self, u: int, v: int) -> float:
        return self.adj[u][v]

    def neighbors(self, u: int) -> Dict[int, float]:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    @property
    def num_edges(self) -> int:
        return self._num_edges

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def total_weight(self) -> float:
        return float(sum(w for u, v, w in self.edges()))

    def edges(self) -> Iterator[Tuple[int, int, float]]:
        """Yield (u, v, w) with u < v, sorted."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield u, v, self.adj[u][v]

    def union_into(self, other: "SpannerGraph") -> None:
        """Add every edge of other into self."""
        if other.n != self.n:
            raise InvariantViolation("union of graphs over different point sets")
        for u, v, w in other.edges():
            self.add_edge(u, v, w)

    def copy(self) -> "SpannerGraph":
        g = SpannerGraph(self.n)
        for u, v, w in self.edges():
            g.add_edge(u, v, w)
        return g

    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        us, vs, ws = [], [], []
        for u, v, w in self.edges():
            us.append(u)
            vs.append(v)
            ws.append(w)
        return (np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64),
                np.asarray(ws, dtype=np.float64))

    def to_csr(self):
        from scipy.sparse import csr_matrix
        us, vs, ws = self.edge_arrays()
        rows = np.concatenate([us, vs])
        cols = np.concatenate([vs, us])
        data = np.concatenate([ws, ws])
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def edge_lines(self) -> List[str]:
        return [f"{u} {v} {repr(w)}" for u, v, w in self.edges()]

    @classmethod
    def from_edge_lines(cls, n: int, lines: Iterable[str]) -> "SpannerGraph":
        g = cls(n)
        for ln in lines:
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            parts = ln.split()
            g.add_edge(int(parts[0]), int(parts[1]), float(parts[2]))
        return g


class HamiltonianPath:
    """An ordering of all point ids with prefix sums of consecutive distances."""

    def __init__(self, order: Sequence[int], metric):
        order = list(order)
        n = metric.n
        if sorted(order) != list(range(n)):
            raise InvariantViolation("order is not a permutation of the point ids")
        self.order = order
        self.position = [0] * n
        for pos, p in enumerate(order):
            self.position[p] = pos
        prefix = np.zeros(n, dtype=np.float64)
        for i in range(1, n):
            prefix[i] = prefix[i - 1] + metric.distance(order[i - 1], order[i])
        self.prefix = prefix
        self.length = float(prefix[-1]) if n > 1 else 0.0

    @property
    def n(self) -> int:
        return len(self.order)

    def path_distance_by_pos(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        return float(self.prefix[j] - self.prefix[i])

    def path_distance(self, p: int, q: int) -> float:
        return self.path_distance_by_pos(self.position[p], self.position[q])


def prim_mst(metric) -> List[Tuple[int, int, float]]:
    """Exact MST of the full metric, one distance row at a time.

    Never materializes the n x n matrix. Edge weights are re-read through the
    scalar distance path.
    """
    n = metric.n
    if n == 1:
        return []
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best_w = metric.distances_from(0)
    best_from = np.zeros(n, dtype=np.int64)
    best_w[0] = np.inf
    edges: List[Tuple[int, int, float]] = []
    for _ in range(n - 1):
        cand = np.where(in_tree, np.inf, best_w)
        v = int(np.argmin(cand))
        u = int(best_from[v])
        edges.append((min(u, v), max(u, v), metric.distance(u, v)))
        in_tree[v] = True
        row = metric.distances_from(v)
        improve = (~in_tree) & (row < best_w)
        best_from[improve] = v
        best_w[improve] = row[improve]
    return edges


def prim_mst_of_graph(g: SpannerGraph) -> List[Tuple[int, int, float]]:
    """MST of a sparse graph by Prim with a heap; DisconnectedInput if split."""
    n = g.n
    if n == 1:
        return []
    seen = [False] * n
    seen[0] = True
    heap = [(w, 0, v) for v, w in g.adj[0].items()]
    heapq.heapify(heap)
    edges: List[Tuple[int, int, float]] = []
    while heap and len(edges) < n - 1:
        w, u, v = heapq.heappop(heap)
        if seen[v]:
            continue
        seen[v] = True
        edges.append((min(u, v), max(u, v), w))
        for x, wx in g.adj[v].items():
            if not seen[x]:
                heapq.heappush(heap, (wx, v, x))
    if len(edges) != n - 1:
        raise DisconnectedInput("graph does not span all points")
    return edges


def preorder_path(tree_edges: Sequence[Tuple[int, int, float]], n: int,
                  root: int = 0) -> List[int]:
    """Depth-first preorder of a spanning tree, children visited ascending."""
    if len(tree_edges) != n - 1:
        raise NotATree(f"{len(tree_edges)} edges cannot span {n} points")
    adj: List[List[int]] = [[] for _ in range(n)]
    for u, v, _ in tree_edges:
        adj[u].append(v)
        adj[v].append(u)
    order: List[int] = []
    seen = [False] * n
    stack = [root]
    while stack:
        u = stack.pop()
        if seen[u]:
            raise NotATree("edge list contains a cycle")
        seen[u] = True
        order.append(u)
        for v in sorted(adj[u], reverse=True):
            if not seen[v]:
                stack.append(v)
    if len(order) != n:
        raise NotATree("edge list is not connected")
    return order


def dijkstra_from(g: SpannerGraph, src: int,
                  limit: Optional[float] = None) -> np.ndarray:
    """Single-source shortest path distances; entries past limit stay inf."""
    dist = np.full(g.n, np.inf)
    dist[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        if limit is not None and d > limit:
            break
        for v, w in g.adj[u].items():
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    if limit is not None:
        dist[dist > limit] = np.inf
    return dist


def shortest_path_matrix(g: SpannerGraph) -> np.ndarray:
    """All-pairs shortest path distances via scipy over the sparse graph."""
    from scipy.sparse.csgraph import dijkstra as csgraph_dijkstra
    if g.num_edges == 0:
        out = np.full((g.n, g.n), np.inf)
        np.fill_diagonal(out, 0.0)
        return out
    return csgraph_dijkstra(g.to_csr(), directed=False)


def hop_bounded_distances(g: SpannerGraph, hops: int,
                          sources: Optional[Sequence[int]] = None) -> np.ndarray:
    """Shortest distances restricted to paths of at most `hops` edges.

    Synchronous relaxation rounds: round r only extends paths of r-1 edges,
    so the result is exact for the hop bound.
    """
    if hops > HOP_ROUNDS_CAP:
        raise InvariantViolation(f"hop bound {hops} exceeds cap {HOP_ROUNDS_CAP}")
    src = np.arange(g.n) if sources is None else np.asarray(sources, dtype=np.int64)
    dist = np.full((len(src), g.n), np.inf)
    dist[np.arange(len(src)), src] = 0.0
    us, vs, ws = g.edge_arrays()
    if us.size == 0:
        return dist
    heads = np.concatenate([us, vs])
    tails = np.concatenate([vs, us])
    weights = np.concatenate([ws, ws])
    for _ in range(hops):
        cand = dist[:, heads] + weights[None, :]
        nxt = dist.copy()
        np.minimum.at(nxt.T, tails, cand.T)
        if np.array_equal(nxt, dist):
            break
        dist = nxt
    return dist


def hop_diameter_at_stretch(g: SpannerGraph, metric, t: float,
                            rel_tol: float = 1e-9,
                            cap: int = HOP_ROUNDS_CAP) -> int:
    """Smallest h such that every pair has a t-approximate path of <= h edges.

    Scans relaxation rounds and stops at the first round where all pairs are
    within t times the metric distance. Returns cap+1 if never satisfied.
    """
    n = g.n
    if n == 1:
        return 0
    target = t * metric.distance_matrix()
    target += rel_tol * np.maximum(target, 1.0)
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    us, vs, ws = g.edge_arrays()
    if us.size == 0:
        return cap + 1
    heads = np.concatenate([us, vs])
    tails = np.concatenate([vs, us])
    weights = np.concatenate([ws, ws])
    for h in range(1, cap + 1):
        cand = dist[:, heads] + weights[None, :]
        nxt = dist.copy()
        np.minimum.at(nxt.T, tails, cand.T)
        dist = nxt
        if np.all(dist <= target):
            return h
    return cap + 1


def connected_components(g: SpannerGraph) -> List[int]:
    """Component label per vertex, labels are the smallest member id."""
    label = [-1] * g.n
    for s in range(g.n):
        if label[s] != -1:
            continue
        stack = [s]
        label[s] = s
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if label[v] == -1:
                    label[v] = s
                    stack.append(v)
    return label
