"""End-to-end spanner construction.

Preprocessing: MST, preorder Hamiltonian path, exact path 1-spanner, interval
forest. Then one pass per level: back-end spanner over representatives pruned
to the level threshold (Part I), attachment of risky lonely bags plus zombie
and incubator labeling (Part II, only while at least gamma levels remain
above), and the merge into the next level with representative selection
(Part III). The output spanner is the union of the path spanner, the base
edges, and every level's pruned edges.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .backends import BasicSpanner, make_backend
from .errors import LabelConflict
from .graph import HamiltonianPath, SpannerGraph, preorder_path, prim_mst, \
    prim_mst_of_graph
from .hierarchy import (FLAG_ADOPTER, FLAG_ATTACHED, FLAG_DISAPPEARING,
                        LABEL_INCUBATOR, LABEL_NONE, LABEL_ZOMBIE, BagForest,
                        LevelParams, build_base_edges, build_interval_forest,
                        base_edge_set, merge_level)
from .pathspan import build_path_spanner

EdgeList = List[Tuple[int, int, float]]


@dataclass
class RunConfig:
    rho: int = 2
    eps: float = 0.5
    t: float = 1.5
    mode: str = "strict"
    gamma: int = 3  # used by explore mode only
    c0: int = 8
    basic: str = "greedy"
    seed: int = 0
    mst_cap: int = 8192
    apsp_cap: int = 2048
    minplus_cap: int = 512


class CounterState:
    """Per-point load counters; only representatives ever move them."""

    def __init__(self, n: int):
        self.large = np.zeros(n, dtype=np.int64)   # levels loaded in a large bag
        self.single = np.zeros(n, dtype=np.int64)  # loaded while alone in a bag
        self.plain = np.zeros(n, dtype=np.int64)   # loaded in other small bags

    @property
    def ctr(self) -> np.ndarray:
        return self.single + self.plain

    @property
    def load(self) -> np.ndarray:
        return self.ctr + self.large

    def maxima(self) -> Dict[str, int]:
        return {"large": int(self.large.max(initial=0)),
                "single": int(self.single.max(initial=0)),
                "plain": int(self.plain.max(initial=0)),
                "load": int(self.load.max(initial=0))}


@dataclass
class LevelTrace:
    level: int
    q_size: int = 0
    star_edges: int = 0
    hat_edges: int = 0
    attachments: int = 0
    zombie_labels: int = 0
    incubator_labels: int = 0
    rep_churn: int = 0
    divergence: int = 0  # counter activity vs pruned-graph activity
    star_delta: int = 0  # back-end degree before the union, per spanner
    hat_delta: int = 0
    part1_ms: float = 0.0
    part2_ms: float = 0.0
    part3_ms: float = 0.0


class AttachmentRecord(NamedTuple):
    level: int
    center_bag: int
    leaf_bag: int
    adopter_bag: int
    zombie_top: int
    rep_center: int
    rep_leaf: int


@dataclass
class SpannerBundle:
    graph: SpannerGraph
    metric: object
    path: HamiltonianPath
    params: LevelParams
    cfg: RunConfig
    forest: BagForest
    counters: CounterState
    trace: List[LevelTrace]
    components: Dict[str, EdgeList]
    attachments: List[AttachmentRecord]
    timings: Dict[str, float]
    backend_name: str
    backend_t: float
    mst_weight: float

    def level_edges(self, j: int) -> EdgeList:
        return self.components[f"level:{j}"]

    def metrics_dict(self) -> dict:
        g = self.graph
        return {
            "n": self.metric.n,
            "rho": self.cfg.rho,
            "eps": self.cfg.eps,
            "t": self.backend_t,
            "basic": self.backend_name,
            "mode": self.cfg.mode,
            "seed": self.cfg.seed,
            "gamma": self.params.gamma,
            "levels": self.params.ell,
            "edges": g.num_edges,
            "max_degree": g.max_degree(),
            "weight": g.total_weight(),
            "mst_weight": self.mst_weight,
            "lightness": (g.total_weight() / self.mst_weight
                          if self.mst_weight > 0 else 1.0),
            "path_length": self.path.length,
            "counter_maxima": self.counters.maxima(),
            "attachments": len(self.attachments),
            "timings_ms": self.timings,
            "trace": [vars(t) for t in self.trace],
        }


def _prune(g: SpannerGraph, cap: float) -> EdgeList:
    return [(u, v, w) for u, v, w in g.edges() if w <= cap]


def run(metric, cfg: RunConfig, backend: Optional[BasicSpanner] = None) -> SpannerBundle:
    n = metric.n
    if backend is None:
        backend = make_backend(cfg.basic, cfg.t)
    t_eff = backend.t
    timings: Dict[str, float] = {}

    t0 = time.perf_counter()
    if n <= cfg.mst_cap:
        tree = prim_mst(metric)
    else:
        approx, _ = backend.build(metric, range(n))
        tree = prim_mst_of_graph(approx)
    mst_weight = float(sum(w for _, _, w in tree))
    timings["mst_ms"] = 1e3 * (time.perf_counter() - t0)

    t0 = time.perf_counter()
    path = HamiltonianPath(preorder_path(tree, n), metric)
    timings["path_ms"] = 1e3 * (time.perf_counter() - t0)

    params = LevelParams.from_config(n, cfg.rho, cfg.eps, t_eff, path.length,
                                     mode=cfg.mode, gamma=cfg.gamma, c0=cfg.c0)
    forest = build_interval_forest(path, metric, params)
    build_base_edges(forest, 1)

    t0 = time.perf_counter()
    h_graph = build_path_spanner(path, metric, cfg.rho)
    timings["path_spanner_ms"] = 1e3 * (time.perf_counter() - t0)

    gtilde = SpannerGraph(n)
    components: Dict[str, EdgeList] = {"H": list(h_graph.edges())}
    for u, v, w in h_graph.edges():
        gtilde.add_edge(u, v, w)

    counters = CounterState(n)
    trace: List[LevelTrace] = []
    attachments: List[AttachmentRecord] = []
    # pending joins keyed by the disappearing zombie's level
    pending: Dict[int, List[Tuple[int, int]]] = {}
    ell, gamma = params.ell, params.gamma

    t_levels = time.perf_counter()
    for j in range(0, ell + 1):
        tr = LevelTrace(level=j)
        trace.append(tr)
        tau_j = params.tau[j]

        t1 = time.perf_counter()
        if j == 0:
            q_bags = []
            q_points = list(range(n))
        else:
            q_bags = forest.nonempty(j)
            q_points = [b.rep for b in q_bags]
        tr.q_size = len(q_points)
        star_edges: EdgeList = []
        if len(q_points) >= 2:
            built, bstats = backend.build(metric, q_points, weight_cap=tau_j)
            star_edges = _prune(built, tau_j)
            tr.star_delta = bstats.delta
        for u, v, w in star_edges:
            gtilde.add_edge(u, v, w)
        components[f"star:{j}"] = star_edges
        tr.star_edges = len(star_edges)
        tr.part1_ms = 1e3 * (time.perf_counter() - t1)

        hat_edges: EdgeList = []
        if 1 <= j <= ell - gamma:
            t2 = time.perf_counter()
            non_isolated = set()
            for u, v, _ in star_edges:
                non_isolated.add(u)
                non_isolated.add(v)
            # crowding: count useful bags per cage ancestor
            useful = [b for b in q_bags if b.label != LABEL_ZOMBIE]
            cage_count: Dict[int, int] = {}
            for b in useful:
                anc = forest.ancestor_index(j, b.index, gamma)
                cage_count[anc] = cage_count.get(anc, 0) + 1
            hat_bags = [b for b in useful if b.rep in non_isolated]
            q_hat = [b.rep for b in hat_bags]
            if len(q_hat) >= 2:
                built, bstats = backend.build(metric, q_hat, weight_cap=tau_j)
                hat_edges = _prune(built, tau_j)
                tr.hat_delta = bstats.delta
            for u, v, w in hat_edges:
                gtilde.add_edge(u, v, w)
            tr.hat_edges = len(hat_edges)

            risky_reps = set()
            for b in hat_bags:
                lonely = cage_count[forest.ancestor_index(j, b.index, gamma)] == 1
                if (b.size < ell and lonely and b.label == LABEL_NONE):
                    risky_reps.add(b.rep)
            _do_attachments(forest, j, hat_bags, q_hat, risky_reps,
                            star_edges, hat_edges, tr, attachments, pending)
            tr.part2_ms = 1e3 * (time.perf_counter() - t2)
        components[f"hat:{j}"] = hat_edges
        components[f"level:{j}"] = sorted(set(star_edges) | set(hat_edges))

        if j >= 1:
            _update_counters(counters, q_bags, star_edges, hat_edges, ell, tr)

        if 1 <= j <= ell - 1:
            t3 = time.perf_counter()
            joins = pending.pop(j, [])
            merge_level(forest, j, joins)
            build_base_edges(forest, j + 1)
            _select_representatives(forest, j + 1, counters, ell, tr)
            tr.part3_ms = 1e3 * (time.perf_counter() - t3)
    timings["levels_ms"] = 1e3 * (time.perf_counter() - t_levels)
    if pending:
        raise LabelConflict(f"unconsumed adoption joins at levels {sorted(pending)}")

    base_graph = base_edge_set(forest)
    components["B"] = list(base_graph.edges())
    for u, v, w in base_graph.edges():
        gtilde.add_edge(u, v, w)

    timings["total_ms"] = sum(v for k, v in timings.items() if k.endswith("_ms"))
    return SpannerBundle(graph=gtilde, metric=metric, path=path, params=params,
                         cfg=cfg, forest=forest, counters=counters, trace=trace,
                         components=components, attachments=attachments,
                         timings=timings, backend_name=backend.name,
                         backend_t=t_eff, mst_weight=mst_weight)


def _do_attachments(forest: BagForest, j: int, hat_bags, q_hat,
                    risky_reps, star_edges: EdgeList, hat_edges: EdgeList,
                    tr: LevelTrace, attachments: List[AttachmentRecord],
                    pending: Dict[int, List[Tuple[int, int]]]) -> None:
    from .attach import LabeledGraph, attach

    if not q_hat:
        return
    q_hat_set = set(q_hat)
    edges = [(u, v) for u, v, _ in hat_edges]
    edges += [(u, v) for u, v, _ in star_edges
              if u in q_hat_set and v in q_hat_set]
    lg = LabeledGraph(q_hat, risky_reps, edges)
    stars = attach(lg)
    bag_of = {b.rep: b for b in hat_bags}
    gamma = forest.params.gamma
    for star in stars.stars:
        center = bag_of[star.center]
        adopter_idx = forest.ancestor_index(j, center.index, gamma)
        forest.bag(j + gamma, adopter_idx).flags |= FLAG_ADOPTER
        for m in range(1, gamma):
            anc = forest.bag(j + m, forest.ancestor_index(j, center.index, m))
            if anc.label == LABEL_ZOMBIE:
                raise LabelConflict(
                    f"bag ({j + m},{anc.index}) is a zombie, cannot incubate")
            if anc.label != LABEL_INCUBATOR:
                anc.label = LABEL_INCUBATOR
                tr.incubator_labels += 1
        for leaf_rep in star.leaves:
            leaf = bag_of[leaf_rep]
            leaf.flags |= FLAG_ATTACHED
            top_idx = forest.ancestor_index(j, leaf.index, gamma - 1)
            for m in range(1, gamma):
                anc = forest.bag(j + m, forest.ancestor_index(j, leaf.index, m))
                if anc.label != LABEL_NONE:
                    raise LabelConflict(
                        f"bag ({j + m},{anc.index}) already labeled, cannot "
                        f"become a zombie")
                anc.label = LABEL_ZOMBIE
                tr.zombie_labels += 1
            forest.bag(j + gamma - 1, top_idx).flags |= FLAG_DISAPPEARING
            pending.setdefault(j + gamma - 1, []).append((top_idx, adopter_idx))
            attachments.append(AttachmentRecord(
                level=j, center_bag=center.index, leaf_bag=leaf.index,
                adopter_bag=adopter_idx, zombie_top=top_idx,
                rep_center=star.center, rep_leaf=leaf_rep))
            tr.attachments += 1


def _update_counters(counters: CounterState, q_bags, star_edges: EdgeList,
                     hat_edges: EdgeList, ell: int, tr: LevelTrace) -> None:
    touched = set()
    for u, v, _ in star_edges:
        touched.add(u)
        touched.add(v)
    star_touched = set(touched)
    for u, v, _ in hat_edges:
        touched.add(u)
        touched.add(v)
    for b in q_bags:
        p = b.rep
        if p not in touched:
            continue
        if p not in star_touched:
            tr.divergence += 1
        if b.size >= ell:
            counters.large[p] += 1
        elif b.size == 1:
            counters.single[p] += 1
        else:
            counters.plain[p] += 1


def _select_representatives(forest: BagForest, j: int, counters: CounterState,
                            ell: int, tr: LevelTrace) -> None:
    lower = forest.levels[j - 1]
    for v in forest.levels[j]:
        if not v.points:
            continue
        chi = v.extended_children()
        child_reps = {lower[i].rep for i in chi}
        if v.size >= ell:
            v.rep = min(v.kernel, key=lambda p: (counters.large[p], p))
        elif len(chi) == 1:
            v.rep = lower[chi[0]].rep
        else:
            v.rep = min(v.kernel, key=lambda p: (counters.plain[p], p))
        if v.rep not in child_reps:
            tr.rep_churn += 1
