"""Pluggable base t-spanner builders: greedy, theta graph (2-D), complete.

Every back-end exposes build(metric, ids) -> (SpannerGraph, BasicStats) and a
declared stretch t; the hierarchical transformation treats them as black boxes.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import ParseError, SizeLimitExceeded, UnsupportedMetric
from .graph import SpannerGraph

GREEDY_CAP_DEFAULT = 2048
COMPLETE_CAP_DEFAULT = 2048


@dataclass
class BasicStats:
    sp_sz: int
    delta: int
    lam: Optional[int]  # hop diameter at declared stretch; lambda is reserved
    sp_tm: float


class BasicSpanner:
    """Shared build() shell: trivial sizes, canonical weights, measured stats."""

    t = 1.0
    name = "basic"

    def declared_hop_bound(self) -> Optional[int]:
        return None

    def _edges(self, metric, idx: np.ndarray,
               weight_cap: Optional[float]) -> List[Tuple[int, int]]:
        raise NotImplementedError

    def build(self, metric, ids, weight_cap: Optional[float] = None):
        t0 = time.perf_counter()
        idx = np.unique(np.asarray(list(ids), dtype=np.int64))
        g = SpannerGraph(metric.n)
        if len(idx) >= 2:
            for u, v in self._edges(metric, idx, weight_cap):
                u, v = int(u), int(v)
                g.add_edge(u, v, metric.distance(u, v))
        delta = max((g.degree(int(u)) for u in idx), default=0)
        stats = BasicStats(sp_sz=g.num_edges, delta=delta,
                           lam=self.declared_hop_bound(),
                           sp_tm=time.perf_counter() - t0)
        return g, stats


class GreedySpanner(BasicSpanner):
    """Path-greedy: scan pairs by ascending distance, add an edge only when no
    t-path exists yet. Decisions use cached upper bounds refreshed by
    threshold-bounded Dijkstra, which never changes which edges get added."""

    name = "greedy"

    def __init__(self, t: float, cap: int = GREEDY_CAP_DEFAULT):
        if not t > 1.0:
            raise ParseError("greedy stretch must exceed 1")
        self.t = float(t)
        self.cap = cap

    def _edges(self, metric, idx, weight_cap):
        import heapq

        m = len(idx)
        if m > self.cap:
            raise SizeLimitExceeded(f"greedy back-end capped at {self.cap} points")
        dmat = metric.distance_matrix(idx, cap=self.cap)
        iu, ju = np.triu_indices(m, k=1)
        dvals = dmat[iu, ju]
        if weight_cap is not None:
            # Pairs beyond the cap would be pruned by the caller anyway, and
            # skipping them cannot change decisions for smaller pairs.
            keep = dvals <= weight_cap * (1.0 + 1e-9)
            iu, ju, dvals = iu[keep], ju[keep], dvals[keep]
        order = np.lexsort((ju, iu, dvals))
        t = self.t
        bound = np.full((m, m), np.inf)
        np.fill_diagonal(bound, 0.0)
        adj: List[List[Tuple[int, float]]] = [[] for _ in range(m)]
        edges: List[Tuple[int, int]] = []
        inf = math.inf
        dlists = dmat.tolist()  # fast scalar reads in the inner search
        gsc = [inf] * m  # per-search tentative distances
        stamp = [0] * m
        epoch = 0

        def has_path(src: int, dst: int, limit: float) -> bool:
            # Goal-directed search with the metric distance to dst as the
            # heuristic; admissible because edge weights are metric distances,
            # so only a thin ellipse around the pair gets explored.
            nonlocal epoch
            epoch += 1
            here = epoch
            hrow = dlists[dst]
            gsc[src] = 0.0
            stamp[src] = here
            heap = [(hrow[src], 0.0, src)]
            touched = [src]
            found = False
            while heap:
                f, g, u = heapq.heappop(heap)
                if f > limit:
                    break
                if g > gsc[u]:
                    continue
                if u == dst:
                    found = True
                    break
                for v, w in adj[u]:
                    ng = g + w
                    if stamp[v] != here:
                        gsc[v] = inf
                        stamp[v] = here
                        touched.append(v)
                    if ng < gsc[v]:
                        nf = ng + hrow[v]
                        if nf <= limit:
                            gsc[v] = ng
                            heapq.heappush(heap, (nf, ng, v))
            row = bound[src]
            for v in touched:
                dv = gsc[v]
                if dv < row[v]:
                    row[v] = dv
                    bound[v, src] = dv
                gsc[v] = inf
            return found

        def batch_harvest(srcs: np.ndarray, limit: float) -> None:
            # One C-level multi-source pass over the current spanner snapshot;
            # distances only shrink later, so these stay valid upper bounds.
            from scipy.sparse import csr_matrix
            from scipy.sparse.csgraph import dijkstra as cs_dijkstra
            counts = [len(a) for a in adj]
            if sum(counts) == 0:
                return
            indices = np.fromiter((v for a in adj for v, _ in a),
                                  dtype=np.int64, count=sum(counts))
            data = np.fromiter((w for a in adj for _, w in a),
                               dtype=np.float64, count=len(indices))
            indptr = np.zeros(m + 1, dtype=np.int64)
            indptr[1:] = np.cumsum(counts)
            csr = csr_matrix((data, indices, indptr), shape=(m, m))
            dist = cs_dijkstra(csr, directed=False, indices=srcs, limit=limit)
            merged = np.minimum(bound[srcs], dist)
            bound[srcs] = merged
            bound[:, srcs] = np.minimum(bound[:, srcs], merged.T)

        chunk_size = 8192
        for start in range(0, len(order), chunk_size):
            chunk = order[start:start + chunk_size]
            ci, cj, cd = iu[chunk], ju[chunk], dvals[chunk]
            cb = bound[ci, cj]
            hard = ~((cb <= t * cd) & np.isfinite(cb))
            if not hard.any():
                continue
            ci, cj, cd = ci[hard], cj[hard], cd[hard]
            batch_harvest(np.unique(ci), t * float(cd.max()) * (1.0 + 1e-12))
            cb = bound[ci, cj]
            hard = ~((cb <= t * cd) & np.isfinite(cb))
            for i, j, d in zip(ci[hard].tolist(), cj[hard].tolist(),
                               cd[hard].tolist()):
                b = bound[i, j]
                if math.isfinite(b) and b <= t * d:
                    continue
                if has_path(i, j, t * d * (1.0 + 1e-12)):
                    continue
                adj[i].append((j, d))
                adj[j].append((i, d))
                edges.append((int(idx[i]), int(idx[j])))
                if d < bound[i, j]:
                    bound[i, j] = bound[j, i] = d
        return edges


class ThetaGraph(BasicSpanner):
    """Cone graph on 2-D Euclidean points: per point and cone, an edge to the
    cone's nearest point by projection on the cone bisector. Stretch
    1/(1 - 2 sin(pi/k)) for k >= 7 cones."""

    name = "theta"

    def __init__(self, k: int = 12):
        k = int(k)
        if k < 7:
            raise ParseError("theta graph needs at least 7 cones")
        self.k = k
        self.name = f"theta:{k}"
        self.t = 1.0 / (1.0 - 2.0 * math.sin(math.pi / k))

    def _edges(self, metric, idx, weight_cap):
        if metric.kind != "euclidean" or metric.dim != 2:
            raise UnsupportedMetric("theta graph needs 2-D Euclidean input")
        pts = metric.coords[idx]
        m = len(idx)
        beta = 2.0 * math.pi / self.k
        edges = set()
        for cone in range(self.k):
            alpha = cone * beta
            b1 = (math.cos(alpha), math.sin(alpha))
            b2 = (math.cos(alpha + beta), math.sin(alpha + beta))
            mid = alpha + 0.5 * beta
            bis = (math.cos(mid), math.sin(mid))
            s = math.sin(beta)
            # Oblique coordinates along the cone boundary rays: q lies in the
            # cone apexed at p iff f1(q) > f1(p) and f2(q) >= f2(p), a
            # dominance condition handled by one sweep per cone.
            f1 = (pts[:, 0] * b2[1] - pts[:, 1] * b2[0]) / s
            f2 = (b1[0] * pts[:, 1] - b1[1] * pts[:, 0]) / s
            proj = pts[:, 0] * bis[0] + pts[:, 1] * bis[1]
            rank = np.empty(m, dtype=np.int64)
            rank[np.argsort(f2, kind="stable")] = np.arange(m)
            sweep = np.lexsort((np.arange(m), -f1))
            tree = _PrefixMin(m)
            pos = 0
            order_f1 = f1[sweep]
            while pos < m:
                end = pos
                while end < m and order_f1[end] == order_f1[pos]:
                    end += 1
                for a in sweep[pos:end]:
                    # suffix over f2 ranks >= rank[a], reversed into a prefix
                    g, who = tree.query(m - 1 - rank[a])
                    if who >= 0:
                        p, q = int(idx[a]), int(idx[who])
                        edges.add((min(p, q), max(p, q)))
                for a in sweep[pos:end]:
                    tree.update(m - 1 - rank[a], (float(proj[a]), int(a)))
                pos = end
        return sorted(edges)


class _PrefixMin:
    """Fenwick tree supporting point chmin and prefix-min queries."""

    def __init__(self, size: int):
        self.n = size
        self.a = [(math.inf, -1)] * (size + 1)

    def update(self, i: int, val) -> None:
        i += 1
        while i <= self.n:
            if val < self.a[i]:
                self.a[i] = val
            i += i & -i

    def query(self, i: int):
        best = (math.inf, -1)
        i += 1
        while i > 0:
            if self.a[i] < best:
                best = self.a[i]
            i -= i & -i
        return best


class CompleteSpanner(BasicSpanner):
    """All pairs; stretch exactly 1, one hop between any two points."""

    name = "complete"
    t = 1.0

    def __init__(self, cap: int = COMPLETE_CAP_DEFAULT):
        self.cap = cap

    def declared_hop_bound(self):
        return 1

    def _edges(self, metric, idx, weight_cap):
        m = len(idx)
        if m > self.cap:
            raise SizeLimitExceeded(f"complete back-end capped at {self.cap} points")
        if weight_cap is not None:
            dmat = metric.distance_matrix(idx, cap=self.cap)
            iu, ju = np.triu_indices(m, k=1)
            keep = dmat[iu, ju] <= weight_cap * (1.0 + 1e-9)
            return [(int(idx[i]), int(idx[j]))
                    for i, j in zip(iu[keep], ju[keep])]
        return [(int(idx[i]), int(idx[j]))
                for i in range(m) for j in range(i + 1, m)]


def make_backend(spec: str, t: float = 1.5) -> BasicSpanner:
    """Back-end from a CLI-style name: greedy | theta[:k] | complete."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name == "greedy":
        if arg:
            raise ParseError("greedy takes no parameter; stretch comes from --t")
        return GreedySpanner(t)
    if name == "theta":
        return ThetaGraph(int(arg) if arg else 12)
    if name == "complete":
        if arg:
            raise ParseError("complete takes no parameter")
        return CompleteSpanner()
    raise ParseError(f"unknown back-end {spec!r}")
