"""Level parameters, the interval forest over the Hamiltonian path, bag set
maintenance (native/base/kernel/point), and the per-level base edges.

Interval counts and level indices are computed with integer power loops, not
float logarithms, so borderline sizes can never drift by one level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AdoptionByParent, EmptyKernel, InvariantViolation, ParseError
from .graph import HamiltonianPath, SpannerGraph

LABEL_NONE = 0
LABEL_ZOMBIE = 1
LABEL_INCUBATOR = 2
LABEL_NAMES = {LABEL_NONE: "unlabeled", LABEL_ZOMBIE: "zombie",
               LABEL_INCUBATOR: "incubator"}

FLAG_DISAPPEARING = 1
FLAG_ATTACHED = 2
FLAG_ADOPTER = 4


def ceil_log_int(n: int, base: int) -> int:
    """Smallest k >= 0 with base**k >= n, exact for integers."""
    if n <= 1:
        return 0
    k, p = 0, 1
    while p < n:
        p *= base
        k += 1
    return k


def ceil_log_real(x: float, base: int) -> int:
    """Smallest k >= 0 with base**k >= x."""
    k, p = 0, 1.0
    while p < x:
        p *= base
        k += 1
    return k


def _ceil_snapped(v: float) -> int:
    # Guard the exact-integer case against one-ULP float drift before ceil.
    return math.ceil(v - 1e-12 * max(1.0, abs(v)))


@dataclass
class LevelParams:
    n: int
    rho: int
    t: float
    eps: float
    L: float
    mode: str
    c: int
    ell: int
    kappa: int
    eta: int
    gamma: int
    c0: int
    xi: List[float] = field(repr=False)
    mu: List[float] = field(repr=False)
    n_intervals: List[int] = field(repr=False)
    tau: List[float] = field(repr=False)

    @classmethod
    def from_config(cls, n: int, rho: int, eps: float, t: float, L: float,
                    mode: str = "strict", gamma: int = 3,
                    c0: int = 8) -> "LevelParams":
        if n < 1:
            raise ParseError("need at least one point")
        if int(rho) != rho or rho < 2:
            raise ParseError("branching parameter must be an integer >= 2")
        if not eps > 0:
            raise ParseError("epsilon must be positive")
        if not t >= 1:
            raise ParseError("stretch must be at least 1")
        rho = int(rho)
        c = _ceil_snapped(4.0 * (t + 1.0) / eps)
        ell = max(1, ceil_log_int(n, rho))
        kappa = ceil_log_real(t, rho)
        eta = 2 * kappa + 3
        if mode == "strict":
            if c0 < 8:
                raise ParseError("strict mode needs the incubation constant >= 8")
            gamma = c0 * (kappa + ceil_log_int(c, rho) + 1)
        elif mode == "explore":
            if gamma < 2:
                raise ParseError("exploratory incubation depth must be >= 2")
        else:
            raise ParseError(f"unknown mode {mode!r}")
        xi = [0.0] * (ell + 1)
        mu = [0.0] * (ell + 1)
        n_intervals = [0] * (ell + 1)
        tau = [0.0] * (ell + 1)
        tau[0] = 2.0 * (L / n) * t * (1.0 + 1.0 / c)
        for j in range(1, ell + 1):
            p = rho ** (j - 1)
            xi[j] = p * L / n
            mu[j] = xi[j] / c
            n_intervals[j] = -(-(c * n) // p)
            tau[j] = tau[0] * (rho ** j)
        for j in range(2, ell + 1):
            if n_intervals[j] != -(-n_intervals[j - 1] // rho):
                raise InvariantViolation("interval counts do not nest by rho")
        return cls(n=n, rho=rho, t=float(t), eps=float(eps), L=float(L),
                   mode=mode, c=c, ell=ell, kappa=kappa, eta=eta, gamma=gamma,
                   c0=c0, xi=xi, mu=mu, n_intervals=n_intervals, tau=tau)


class Bag:
    """One interval node of the forest. Set tuples are path-ordered for
    native/base and id-sorted for kernel/points; empty bags share ()."""

    __slots__ = ("level", "index", "native", "base", "kernel", "points",
                 "label", "rep", "surviving", "joined", "flags", "step_parent")

    def __init__(self, level: int, index: int):
        self.level = level
        self.index = index
        self.native: Tuple[int, ...] = ()
        self.base: Tuple[int, ...] = ()
        self.kernel: Tuple[int, ...] = ()
        self.points: Tuple[int, ...] = ()
        self.label = LABEL_NONE
        self.rep: Optional[int] = None
        self.surviving: Tuple[int, ...] = ()
        self.joined: Tuple[int, ...] = ()
        self.flags = 0
        self.step_parent: Optional[int] = None

    @property
    def empty(self) -> bool:
        return not self.points

    @property
    def size(self) -> int:
        return len(self.points)

    def extended_children(self) -> Tuple[int, ...]:
        return self.surviving + self.joined


class BagForest:
    """Levels 1..ell of bags over the path; level j+1 interval i covers
    level-j intervals [i*rho, (i+1)*rho)."""

    def __init__(self, path: HamiltonianPath, metric, params):
        self.path = path
        self.metric = metric
        self.params = params
        self.rho = params.rho
        self.ell = params.ell
        self.levels: List[List[Bag]] = [[]]
        self.base_edges: Dict[int, List[Tuple[int, int]]] = {}
        counts = [0, params.n_intervals[1]]
        for j in range(2, self.ell + 1):
            counts.append(-(-counts[j - 1] // self.rho))
        self.counts = counts
        for j in range(1, self.ell + 1):
            self.levels.append([Bag(j, i) for i in range(counts[j])])
        self._assign_level1()

    def _assign_level1(self) -> None:
        path, params = self.path, self.params
        mu1 = params.mu[1]
        m1 = self.counts[1]
        groups: Dict[int, List[int]] = {}
        for pos in range(path.n):
            offset = float(path.prefix[pos])
            idx = 0 if mu1 == 0.0 else min(int(offset / mu1), m1 - 1)
            groups.setdefault(idx, []).append(path.order[pos])
        for idx, pts in groups.items():
            bag = self.levels[1][idx]
            native = tuple(pts)  # already in path order
            bag.native = native
            bag.base = native
            bag.kernel = tuple(sorted(native))
            bag.points = bag.kernel
            bag.rep = native[0]  # leftmost along the path
        for j in range(2, self.ell + 1):
            for bag in self.levels[j]:
                lo, hi = self.children_range(j, bag.index)
                bag.native = tuple(p for i in range(lo, hi)
                                   for p in self.levels[j - 1][i].native)

    def bag(self, j: int, i: int) -> Bag:
        return self.levels[j][i]

    def children_range(self, j: int, i: int) -> Tuple[int, int]:
        """Child index window at level j-1 for bag i of level j >= 2."""
        return i * self.rho, min((i + 1) * self.rho, self.counts[j - 1])

    def parent_index(self, j: int, i: int) -> int:
        return i // self.rho

    def ancestor_index(self, j: int, i: int, up: int) -> int:
        return i // (self.rho ** up)

    def nonempty(self, j: int) -> List[Bag]:
        return [b for b in self.levels[j] if b.points]

    def dump(self) -> List[dict]:
        out = []
        for j in range(1, self.ell + 1):
            for b in self.levels[j]:
                if not b.points:
                    continue
                out.append({"level": j, "interval": b.index,
                            "native": len(b.native), "base": len(b.base),
                            "kernel": len(b.kernel), "points": len(b.points),
                            "label": LABEL_NAMES[b.label], "rep": b.rep})
        return out


def build_interval_forest(path: HamiltonianPath, metric, params) -> BagForest:
    return BagForest(path, metric, params)


def merge_level(forest: BagForest, j: int,
                joins: Sequence[Tuple[int, int]]) -> None:
    """Fill level j+1 sets from level j. joins lists (zombie index at level j,
    adopter index at level j+1); each zombie leaves its parent for the adopter.
    """
    rho = forest.rho
    ell_threshold = forest.params.ell
    disappearing: Dict[int, int] = {}
    for z_idx, a_idx in joins:
        if forest.parent_index(j, z_idx) == a_idx:
            raise AdoptionByParent(
                f"level-{j} bag {z_idx} adopted by its own parent {a_idx}")
        disappearing[z_idx] = a_idx
    adopted: Dict[int, List[int]] = {}
    for z_idx, a_idx in joins:
        adopted.setdefault(a_idx, []).append(z_idx)
        zbag = forest.bag(j, z_idx)
        zbag.flags |= FLAG_DISAPPEARING
        zbag.step_parent = a_idx
    lower = forest.levels[j]
    for v in forest.levels[j + 1]:
        lo, hi = forest.children_range(j + 1, v.index)
        surviving = [i for i in range(lo, hi)
                     if lower[i].points and i not in disappearing]
        joined = sorted(adopted.get(v.index, []))
        v.surviving = tuple(surviving)
        v.joined = tuple(joined)
        if joined:
            v.flags |= FLAG_ADOPTER
            if not surviving:
                raise InvariantViolation(
                    f"adopter ({j + 1},{v.index}) has no surviving children")
        base: List[int] = []
        for i in surviving:
            base.extend(lower[i].base)
        v.base = tuple(base)
        pts: List[int] = []
        kernel_s: List[int] = []
        for i in surviving:
            pts.extend(lower[i].points)
            kernel_s.extend(lower[i].kernel)
        for i in joined:
            pts.extend(lower[i].points)
        v.points = tuple(sorted(pts))
        if len(kernel_s) >= ell_threshold:
            v.kernel = tuple(sorted(kernel_s))
        else:
            kernel_x = list(kernel_s)
            for i in joined:
                kernel_x.extend(lower[i].kernel)
            v.kernel = tuple(sorted(kernel_x))
        if v.points and not v.kernel:
            raise EmptyKernel(f"non-empty bag ({j + 1},{v.index}) lost its kernel")


def build_base_edges(forest: BagForest, j: int) -> List[Tuple[int, int]]:
    """New level-j base edges; stored on the forest and returned."""
    edges: List[Tuple[int, int]] = []
    if j == 1:
        for bag in forest.levels[1]:
            for a, b in zip(bag.base, bag.base[1:]):
                edges.append((a, b))
    else:
        lower = forest.levels[j - 1]
        for bag in forest.levels[j]:
            kids = [lower[i] for i in bag.surviving]
            for left, right in zip(kids, kids[1:]):
                edges.append((left.base[-1], right.base[0]))
    forest.base_edges[j] = edges
    return edges


def base_edge_set(forest: BagForest) -> SpannerGraph:
    """Union of all per-level base edges, weighted by true metric distance."""
    g = SpannerGraph(forest.metric.n)
    for j in range(1, forest.ell + 1):
        if j not in forest.base_edges:
            raise InvariantViolation(f"base edges for level {j} not built yet")
        for u, v in forest.base_edges[j]:
            g.add_edge(u, v, forest.metric.distance(u, v))
    return g
