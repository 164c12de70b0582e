"""Exact 1-spanner for the metric induced by a Hamiltonian path.

Construction: a search tree over path positions. Each node owns a window of
consecutive positions and designates k = max(3, rho) of them as splits (first
and last position pinned, the rest evenly spread); the k-1 gaps between
consecutive splits become child windows. Every position is a split of exactly
one node, which is what keeps the degree bound flat across levels.

Per node the edges are: the chain between consecutive splits, a fan from every
split to the last split, a fan from the first split to every split, and two
boundary edges per nonempty gap tying the gap's extreme positions to the
enclosing splits. All of these connect positions left-to-right, so any
query pair is served by a position-monotone path: climb right from the lower
endpoint (fan to the window's last split, boundary hop into the parent), walk
the chain inside the lowest window containing both, then descend symmetrically
(boundary hop into a child, fan from its first split). Monotone paths have
length exactly equal to the path distance, and the climb and descent cost O(1)
hops per tree level.
"""
from __future__ import annotations

from typing import List, Tuple

from .graph import HamiltonianPath, SpannerGraph

# Fitted from measurements in the test suite; see hop_budget.
EDGES_PER_POINT_BOUND = 5
HOP_BUDGET_SCALE = 4


def _choose_splits(lo: int, hi: int, k: int) -> List[int]:
    size = hi - lo + 1
    if size <= k:
        return list(range(lo, hi + 1))
    total_gap = size - k
    base, extra = divmod(total_gap, k - 1)
    splits = [lo]
    pos = lo
    for g in range(k - 1):
        pos += (base + 1 if g < extra else base) + 1
        splits.append(pos)
    return splits


def path_spanner_position_edges(n: int, rho: int) -> List[Tuple[int, int]]:
    """Edge set over positions 0..n-1; exact for any path metric on them."""
    if rho < 2:
        raise ValueError("branching parameter must be at least 2")
    if n == 1:
        return []
    k = max(3, rho)
    edges = set()
    stack = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        splits = _choose_splits(lo, hi, k)
        m = len(splits)
        for a, b in zip(splits, splits[1:]):
            edges.add((a, b))
            if b - a > 1:
                stack.append((a + 1, b - 1))
                edges.add((a, a + 1))
                edges.add((b - 1, b))
        for i in range(m - 2):
            edges.add((splits[i], splits[-1]))
        for i in range(2, m):
            edges.add((splits[0], splits[i]))
    return sorted(edges)


def tree_depth(n: int, rho: int) -> int:
    """Levels of the split tree; windows shrink by a factor of about k-1."""
    k = max(3, rho)
    depth = 1
    size = n
    while size > k:
        size = (size - k + k - 2) // (k - 1)
        depth += 1
    return depth


def hop_budget(n: int, rho: int, scale: int = HOP_BUDGET_SCALE) -> int:
    """Upper bound on hops needed for an exact path between any pair."""
    return scale * tree_depth(n, rho) + 2 * max(3, rho) + 4


def build_path_spanner(path: HamiltonianPath, metric, rho: int) -> SpannerGraph:
    """1-spanner of the path metric, reweighted to true metric distances.

    Reweighting only shrinks edges (triangle inequality), so any monotone
    path still certifies the pairwise path distance as an upper bound.
    """
    g = SpannerGraph(path.n)
    order = path.order
    for i, j in path_spanner_position_edges(path.n, rho):
        u, v = order[i], order[j]
        g.add_edge(u, v, metric.distance(u, v))
    return g


def line_spanner(path: HamiltonianPath, rho: int) -> SpannerGraph:
    """Same edge set weighted by path distance itself; used by exactness tests."""
    g = SpannerGraph(path.n)
    order = path.order
    for i, j in path_spanner_position_edges(path.n, rho):
        g.add_edge(order[i], order[j], path.path_distance_by_pos(i, j))
    return g
