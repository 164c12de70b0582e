"""Star-forest attachment over a safe/risky labeled graph.

Every risky vertex with at least one neighbor must end up as a leaf (or
center) of some star; stars are vertex disjoint and use only input edges.
"""
from __future__ import annotations

import heapq
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple

from .errors import InvariantViolation


class LabeledGraph:
    """Undirected graph whose vertices are partitioned into safe and risky."""

    def __init__(self, vertices: Iterable[int], risky: Iterable[int],
                 edges: Iterable[Tuple[int, int]]):
        self.vertices = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        self.risky = frozenset(risky)
        if not self.risky <= vset:
            raise InvariantViolation("risky labels name unknown vertices")
        self.adj: Dict[int, List[int]] = {v: [] for v in self.vertices}
        seen = set()
        for u, v in edges:
            if u == v or u not in vset or v not in vset:
                raise InvariantViolation(f"bad edge ({u},{v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            self.adj[u].append(v)
            self.adj[v].append(u)
        for v in self.vertices:
            self.adj[v].sort()
        self.edges = frozenset(seen)

    def is_risky(self, v: int) -> bool:
        return v in self.risky

    def non_isolated_risky(self) -> List[int]:
        return [v for v in self.vertices if v in self.risky and self.adj[v]]


class Star(NamedTuple):
    center: int
    leaves: Tuple[int, ...]


class StarForest(NamedTuple):
    stars: Tuple[Star, ...]

    def covered(self) -> set:
        out = set()
        for s in self.stars:
            out.add(s.center)
            out.update(s.leaves)
        return out


def _default_pick(g: LabeledGraph, z: int) -> int:
    # Safe neighbors make better centers (they never sit on stage-2 cycles);
    # among equals take the smallest id for determinism.
    return min(g.adj[z], key=lambda x: (x in g.risky, x))


def attach(g: LabeledGraph,
           picker: Optional[Callable[[LabeledGraph, int], int]] = None) -> StarForest:
    """Two stages: peel in-degree-zero vertices of the arc digraph into stars,
    then split the leftover directed cycles by parity."""
    pick = picker or _default_pick
    out_arc: Dict[int, Optional[int]] = {v: None for v in g.vertices}
    in_deg: Dict[int, int] = {v: 0 for v in g.vertices}
    for z in g.non_isolated_risky():
        s = pick(g, z)
        if s not in g.adj[z]:
            raise InvariantViolation(f"picker chose a non-neighbor for {z}")
        out_arc[z] = s
        in_deg[s] += 1

    centers: Dict[int, List[int]] = {}
    heap = [v for v in g.vertices if in_deg[v] == 0 and out_arc[v] is not None]
    heapq.heapify(heap)
    while heap:
        z = heapq.heappop(heap)
        if in_deg[z] != 0 or out_arc[z] is None:
            continue
        s = out_arc[z]
        out_arc[z] = None
        in_deg[s] -= 1
        if s in centers:
            centers[s].append(z)
        else:
            centers[s] = [z]
            nxt = out_arc[s]
            if nxt is not None:
                # s is a center for good; drop its own attachment wish
                out_arc[s] = None
                in_deg[nxt] -= 1
                if in_deg[nxt] == 0 and out_arc[nxt] is not None:
                    heapq.heappush(heap, nxt)

    # Leftover arcs form vertex-disjoint directed cycles of length >= 2.
    visited = set()
    for v0 in g.vertices:
        if out_arc[v0] is None or v0 in visited:
            continue
        cycle = [v0]
        visited.add(v0)
        nxt = out_arc[v0]
        while nxt != v0:
            cycle.append(nxt)
            visited.add(nxt)
            nxt = out_arc[nxt]
        length = len(cycle)
        if length < 2:
            raise InvariantViolation("stage-2 self-loop cannot happen")
        for i in range(0, length - 1, 2):
            centers[cycle[i + 1]] = [cycle[i]]
        if length % 2 == 1:
            # the odd vertex hangs off the previous center by the cycle edge
            # between them, orientation ignored
            centers[cycle[length - 2]].append(cycle[length - 1])

    stars = tuple(Star(center=c, leaves=tuple(sorted(ls)))
                  for c, ls in sorted(centers.items()))
    return StarForest(stars=stars)


def check_star_forest(g: LabeledGraph, sf: StarForest) -> Tuple[bool, List[str]]:
    """Brute-force oracle for the two attachment conditions."""
    problems: List[str] = []
    seen: set = set()
    for star in sf.stars:
        if not star.leaves:
            problems.append(f"star at {star.center} has no leaves")
        for v in (star.center,) + star.leaves:
            if v in seen:
                problems.append(f"vertex {v} appears in two stars")
            seen.add(v)
        for leaf in star.leaves:
            if leaf not in g.risky:
                problems.append(f"leaf {leaf} is labeled safe")
            key = (min(leaf, star.center), max(leaf, star.center))
            if key not in g.edges:
                problems.append(f"star edge {key} is not an input edge")
    for v in g.non_isolated_risky():
        if v not in seen:
            problems.append(f"non-isolated risky vertex {v} left uncovered")
    return (not problems), problems
