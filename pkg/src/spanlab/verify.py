"""Measurement-based re-checks of everything the construction promises.

Each check produces a report entry with a measured value and a bound.
Structural invariants hold in every mode and any violation is a hard
failure; quantitative bounds are asserted in strict mode and only
reported in exploratory mode, because small gamma voids the analysis
that backs them.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .errors import SizeLimitExceeded
from .graph import (HOP_ROUNDS_CAP, SpannerGraph, hop_diameter_at_stretch,
                    shortest_path_matrix)
from .hierarchy import (FLAG_ADOPTER, FLAG_ATTACHED, FLAG_DISAPPEARING,
                        LABEL_INCUBATOR, LABEL_NONE, LABEL_ZOMBIE, LABEL_NAMES)

REL_TOL = 1e-9
DEGREE_SCALE_DEFAULT = 6.0
HOP_SCALE_DEFAULT = 12.0
LIGHTNESS_SCALE_DEFAULT = 1.0
SAMPLE_FULL_LIMIT = 512  # check every bag up to here, sample 5% above
APSP_CAP_ENV = "SPANLAB_APSP_CAP"
MINPLUS_CAP_ENV = "SPANLAB_MINPLUS_CAP"


@dataclass
class CheckEntry:
    name: str
    tag: str  # "ANY" or "STRICT"
    status: str  # "pass" | "fail" | "info" | "skipped"
    measured: Optional[float] = None
    bound: Optional[float] = None
    tolerance: float = 0.0
    detail: str = ""

    def as_dict(self) -> dict:
        def clean(v):
            if v is None:
                return None
            if isinstance(v, float) and not math.isfinite(v):
                return str(v)
            return v
        return {"name": self.name, "tag": self.tag, "status": self.status,
                "measured": clean(self.measured), "bound": clean(self.bound),
                "tolerance": self.tolerance, "detail": self.detail}


@dataclass
class VerificationReport:
    entries: List[CheckEntry] = field(default_factory=list)

    def add(self, entry) -> None:
        if isinstance(entry, CheckEntry):
            self.entries.append(entry)
        else:
            self.entries.extend(entry)

    @property
    def failures(self) -> List[CheckEntry]:
        return [e for e in self.entries if e.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok,
                           "entries": [e.as_dict() for e in self.entries]},
                          indent=2)

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            meas = "-" if e.measured is None else f"{e.measured:g}"
            bnd = "-" if e.bound is None else f"{e.bound:g}"
            lines.append(f"[{e.status:>7}] {e.name:<28} [{e.tag}] "
                         f"measured={meas} bound={bnd}"
                         + (f"  {e.detail}" if e.detail else ""))
        verdict = "OK" if self.ok else f"{len(self.failures)} HARD FAILURE(S)"
        lines.append(f"verdict: {verdict} ({len(self.entries)} checks)")
        return "\n".join(lines)


def _is_strict(bundle) -> bool:
    return bundle.cfg.mode == "strict"


def _quant_status(ok: bool, strict: bool) -> str:
    if ok:
        return "pass"
    return "fail" if strict else "info"


def _env_cap(env_name: str, default: int) -> int:
    raw = os.environ.get(env_name)
    return int(raw) if raw else default


def _degrees(edges: Iterable[Tuple[int, int, float]]) -> Dict[int, int]:
    deg: Dict[int, int] = {}
    for u, v, _ in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def verify_stretch(bundle, target: Optional[float] = None,
                   cap: Optional[int] = None) -> CheckEntry:
    """Max distance ratio over all pairs, against the advertised stretch."""
    if target is None:
        target = bundle.backend_t + bundle.cfg.eps
    if cap is None:
        cap = _env_cap(APSP_CAP_ENV, bundle.cfg.apsp_cap)
    n = bundle.metric.n
    if n > cap:
        return CheckEntry("stretch", "STRICT", "skipped", bound=target,
                          detail=f"n={n} over APSP cap {cap}")
    if n <= 1:
        return CheckEntry("stretch", "STRICT", "pass", measured=1.0,
                          bound=target, tolerance=REL_TOL)
    try:
        dmat = bundle.metric.distance_matrix(cap=cap)
    except SizeLimitExceeded:
        return CheckEntry("stretch", "STRICT", "skipped", bound=target,
                          detail=f"n={n} over APSP cap {cap}")
    w = shortest_path_matrix(bundle.graph)
    off = ~np.eye(n, dtype=bool)
    ratio = float(np.max(w[off] / dmat[off]))
    ok = ratio <= target * (1.0 + REL_TOL)
    return CheckEntry("stretch", "STRICT", _quant_status(ok, _is_strict(bundle)),
                      measured=ratio, bound=target, tolerance=REL_TOL)


def verify_hop_diameter(bundle, target: Optional[float] = None,
                        cap: Optional[int] = None,
                        scale: float = HOP_SCALE_DEFAULT,
                        backend=None) -> CheckEntry:
    """Hops needed to realize the advertised stretch everywhere.

    The bound compares against the back-end's own measured hop diameter,
    so the entry records both: measured = ours, detail carries theirs.
    """
    if target is None:
        target = bundle.backend_t + bundle.cfg.eps
    if cap is None:
        cap = _env_cap(MINPLUS_CAP_ENV, bundle.cfg.minplus_cap)
    n = bundle.metric.n
    if n > cap:
        return CheckEntry("hop-diameter", "STRICT", "skipped",
                          detail=f"n={n} over min-plus cap {cap}")
    if n <= 1:
        return CheckEntry("hop-diameter", "STRICT", "pass", measured=0.0,
                          bound=0.0)
    h = hop_diameter_at_stretch(bundle.graph, bundle.metric, target)
    if backend is None:
        from .backends import make_backend
        backend = make_backend(bundle.cfg.basic, bundle.cfg.t)
    lam = backend.declared_hop_bound()
    if lam is None:
        bgraph, _ = backend.build(bundle.metric, range(n))
        lam = hop_diameter_at_stretch(bgraph, bundle.metric, backend.t)
    rho = bundle.cfg.rho
    log_term = math.log(n) / math.log(rho)
    bound = scale * (lam + log_term + rho)
    ok = h <= HOP_ROUNDS_CAP and h <= bound
    return CheckEntry("hop-diameter", "STRICT",
                      _quant_status(ok, _is_strict(bundle)),
                      measured=float(h), bound=bound,
                      detail=f"backend hop diameter {lam}, scale {scale:g}")


def verify_lightness(bundle, scale: float = LIGHTNESS_SCALE_DEFAULT) -> CheckEntry:
    """Total weight over MST weight against the level-count growth form."""
    n = bundle.metric.n
    if bundle.mst_weight <= 0.0:
        return CheckEntry("lightness", "STRICT", "pass", measured=1.0,
                          detail="degenerate MST weight")
    psi = bundle.graph.total_weight() / bundle.mst_weight
    cfg, params = bundle.cfg, bundle.params
    t = bundle.backend_t
    log_term = max(1.0, math.log(n) / math.log(cfg.rho))
    bound = (scale * cfg.rho * log_term * (t * t / cfg.eps)
             * (bundle.path.length / bundle.mst_weight if bundle.path.length else 1.0))
    ok = psi <= bound * (1.0 + REL_TOL)
    return CheckEntry("lightness", "STRICT",
                      _quant_status(ok, _is_strict(bundle)),
                      measured=psi, bound=bound, tolerance=REL_TOL,
                      detail=f"scale {scale:g}, levels {params.ell}")


def verify_degree(bundle, scale: float = DEGREE_SCALE_DEFAULT) -> CheckEntry:
    """Max degree against the per-level back-end degree times gamma."""
    params = bundle.params
    delta_meas = 0
    for j in range(0, params.ell + 1):
        for key in (f"star:{j}", f"hat:{j}"):
            deg = _degrees(bundle.components.get(key, []))
            if deg:
                delta_meas = max(delta_meas, max(deg.values()))
    bound = scale * (delta_meas * params.gamma + bundle.cfg.rho) + 2
    measured = bundle.graph.max_degree()
    ok = measured <= bound
    return CheckEntry("degree", "STRICT",
                      _quant_status(ok, _is_strict(bundle)),
                      measured=float(measured), bound=float(bound),
                      detail=f"per-level spanner degree {delta_meas}, "
                             f"gamma {params.gamma}, scale {scale:g}")


def verify_counters(bundle) -> List[CheckEntry]:
    """Counter maxima against the load bounds (asserted only in strict mode)."""
    params = bundle.params
    strict = _is_strict(bundle)
    maxima = bundle.counters.maxima()
    box = min(params.ell, params.gamma + params.eta)
    bounds = {"large": 1, "single": box, "plain": box, "load": 2 * box + 1}
    out = []
    for key in ("large", "single", "plain", "load"):
        ok = maxima[key] <= bounds[key]
        out.append(CheckEntry(f"counter-{key}", "STRICT",
                              _quant_status(ok, strict),
                              measured=float(maxima[key]),
                              bound=float(bounds[key])))
    return out


class _Witness:
    """Accumulates violations for one named structural check."""

    def __init__(self, name: str):
        self.name = name
        self.bad: List[str] = []

    def expect(self, ok: bool, detail: str) -> None:
        if not ok:
            self.bad.append(detail)

    def entry(self) -> CheckEntry:
        status = "pass" if not self.bad else "fail"
        return CheckEntry(self.name, "ANY", status,
                          measured=float(len(self.bad)), bound=0.0,
                          detail="; ".join(self.bad[:3]))


def verify_structure(bundle) -> List[CheckEntry]:
    """Every mode-independent invariant, re-checked from the retained forest."""
    forest = bundle.forest
    params = bundle.params
    path = bundle.path
    n = bundle.metric.n
    ell = params.ell
    gamma = params.gamma
    checks: List[_Witness] = []

    def witness(name: str) -> _Witness:
        w = _Witness(name)
        checks.append(w)
        return w

    all_ids = list(range(n))

    w = witness("q-partition")
    for j in range(1, ell + 1):
        pooled = sorted(p for b in forest.nonempty(j) for p in b.points)
        w.expect(pooled == all_ids, f"level {j} point sets do not partition")

    w = witness("native-partition")
    for j in range(1, ell + 1):
        pooled = sorted(p for b in forest.levels[j] for p in b.native)
        w.expect(pooled == all_ids, f"level {j} native sets do not partition")
        if j >= 2:
            for b in forest.levels[j]:
                lo, hi = forest.children_range(j, b.index)
                merged = tuple(p for i in range(lo, hi)
                               for p in forest.levels[j - 1][i].native)
                w.expect(b.native == merged,
                         f"bag ({j},{b.index}) native != children union")

    w = witness("set-chain")
    for j in range(1, ell + 1):
        for b in forest.nonempty(j):
            bs, ks, qs, ns = set(b.base), set(b.kernel), set(b.points), set(b.native)
            w.expect(bs <= ns, f"bag ({j},{b.index}) base outside native")
            w.expect(bs <= ks, f"bag ({j},{b.index}) base outside kernel")
            w.expect(ks <= qs, f"bag ({j},{b.index}) kernel outside points")

    w = witness("empty-consistency")
    for j in range(1, ell + 1):
        for b in forest.levels[j]:
            w.expect(bool(b.points) == bool(b.base),
                     f"bag ({j},{b.index}) empty mismatch")
            if b.label != LABEL_NONE:
                w.expect(bool(b.points),
                         f"bag ({j},{b.index}) labeled but empty")

    w = witness("rep-in-kernel")
    for j in range(1, ell + 1):
        for b in forest.levels[j]:
            if b.points:
                w.expect(b.rep in set(b.kernel),
                         f"bag ({j},{b.index}) rep {b.rep} not in kernel")
            else:
                w.expect(b.rep is None, f"empty bag ({j},{b.index}) has a rep")

    w = witness("kernel-rule")
    for j in range(1, ell + 1):
        for b in forest.nonempty(j):
            if b.size < ell:
                w.expect(set(b.kernel) == set(b.points),
                         f"small bag ({j},{b.index}) kernel != points")
            else:
                w.expect(len(b.kernel) >= ell,
                         f"large bag ({j},{b.index}) kernel below {ell}")

    w = witness("label-flags")
    for j in range(1, ell + 1):
        for b in forest.levels[j]:
            w.expect(b.label in LABEL_NAMES, f"bag ({j},{b.index}) label junk")
            if b.flags & FLAG_DISAPPEARING:
                w.expect(b.label == LABEL_ZOMBIE,
                         f"disappearing bag ({j},{b.index}) not a zombie")
            if b.flags & FLAG_ATTACHED:
                w.expect(b.label != LABEL_INCUBATOR,
                         f"star leaf bag ({j},{b.index}) is an incubator")

    w = witness("adoption-links")
    for j in range(2, ell + 1):
        for b in forest.levels[j]:
            w.expect((b.flags & FLAG_ADOPTER != 0) == bool(b.joined),
                     f"bag ({j},{b.index}) adopter flag vs joins")
            if b.joined:
                w.expect(bool(b.surviving),
                         f"adopter ({j},{b.index}) kept no surviving child")
            for zi in b.joined:
                z = forest.bag(j - 1, zi)
                w.expect(z.step_parent == b.index,
                         f"joined bag ({j - 1},{zi}) step-parent mismatch")
                w.expect(bool(z.flags & FLAG_DISAPPEARING),
                         f"joined bag ({j - 1},{zi}) not disappearing")

    w = witness("zombie-step-parent")
    for j in range(1, ell + 1):
        for b in forest.levels[j]:
            if not (b.flags & FLAG_DISAPPEARING):
                continue
            w.expect(b.step_parent is not None,
                     f"disappearing ({j},{b.index}) has no step-parent")
            if j < ell:
                fp = forest.parent_index(j, b.index)
                w.expect(b.step_parent != fp,
                         f"disappearing ({j},{b.index}) adopted by own parent")
                w.expect(forest.bag(j + 1, fp).empty,
                         f"disappearing ({j},{b.index}) parent not empty")

    w = witness("zombie-siblings")
    for j in range(2, ell + 1):
        for b in forest.levels[j]:
            lo, hi = forest.children_range(j, b.index)
            kids = [forest.levels[j - 1][i] for i in range(lo, hi)]
            if any(k.label == LABEL_ZOMBIE for k in kids):
                others = [k for k in kids if k.label != LABEL_ZOMBIE]
                w.expect(all(k.empty for k in others),
                         f"bag ({j},{b.index}) zombie child with busy siblings")
                w.expect(not b.joined,
                         f"bag ({j},{b.index}) zombie child but adopted more")

    w = witness("zombie-chain-points")
    for rec in bundle.attachments:
        leaf = forest.bag(rec.level, rec.leaf_bag)
        for m in range(1, gamma):
            anc = forest.bag(rec.level + m,
                             forest.ancestor_index(rec.level, rec.leaf_bag, m))
            w.expect(anc.points == leaf.points,
                     f"chain bag ({rec.level + m},{anc.index}) differs from "
                     f"leaf ({rec.level},{rec.leaf_bag})")
            w.expect(anc.label == LABEL_ZOMBIE,
                     f"chain bag ({rec.level + m},{anc.index}) not a zombie")

    w = witness("representing-edges")
    for rec in bundle.attachments:
        w.expect(bundle.graph.has_edge(rec.rep_center, rec.rep_leaf),
                 f"missing representing edge ({rec.rep_center},{rec.rep_leaf})")

    w = witness("weight-caps")
    for j in range(0, ell + 1):
        cap = params.tau[j] if j < len(params.tau) else params.tau[-1]
        for key in (f"star:{j}", f"hat:{j}"):
            for u, v, wt in bundle.components.get(key, []):
                w.expect(wt <= cap,
                         f"{key} edge ({u},{v}) weight {wt} over {cap}")

    w = witness("level-degree-split")
    for j in range(0, ell + 1):
        star = _degrees(bundle.components.get(f"star:{j}", []))
        hat = _degrees(bundle.components.get(f"hat:{j}", []))
        both = _degrees(bundle.components.get(f"level:{j}", []))
        for p, d in both.items():
            w.expect(d <= star.get(p, 0) + hat.get(p, 0),
                     f"level {j} degree of {p} exceeds the two spanners")

    w = witness("q-size")
    for tr in bundle.trace:
        if tr.level == 0:
            continue
        cap = min(n, params.n_intervals[tr.level])
        w.expect(tr.q_size <= cap,
                 f"level {tr.level} has {tr.q_size} bags, cap {cap}")

    # global base edge set: degree split by path side, size, per-level weight
    base_edges = bundle.components.get("B", [])
    w = witness("base-degree")
    left: Dict[int, int] = {}
    right: Dict[int, int] = {}
    for u, v, _ in base_edges:
        lo, hi = (u, v) if path.position[u] < path.position[v] else (v, u)
        right[lo] = right.get(lo, 0) + 1
        left[hi] = left.get(hi, 0) + 1
    for p, d in right.items():
        w.expect(d <= 1, f"point {p} has {d} base successors")
    for p, d in left.items():
        w.expect(d <= 1, f"point {p} has {d} base predecessors")
    w.expect(len(base_edges) <= n, f"{len(base_edges)} base edges for {n} points")

    w = witness("base-level-weight")
    total = 0.0
    length = path.length
    for j in range(1, ell + 1):
        wj = sum(bundle.metric.distance(u, v)
                 for u, v in forest.base_edges.get(j, []))
        total += wj
        w.expect(wj <= length * (1.0 + REL_TOL) + 1e-12,
                 f"level {j} base weight {wj} over path length {length}")
        side: Dict[int, int] = {}
        for u, v in forest.base_edges.get(j, []):
            for p in (u, v):
                side[p] = side.get(p, 0) + 1
            w.expect(side[u] <= 2 and side[v] <= 2,
                     f"level {j} base edges not vertex-disjoint paths")
    w.expect(total <= ell * length * (1.0 + REL_TOL) + 1e-12,
             f"total base weight {total} over {ell}x path length")

    w = witness("base-recursive-path")
    memo: Dict[Tuple[int, int], frozenset] = {}
    for j in range(1, ell + 1):
        for b in forest.nonempty(j):
            if j == 1:
                mine = frozenset(zip(b.base, b.base[1:]))
            else:
                parts = [memo.get((j - 1, zi), frozenset()) for zi in b.surviving]
                links = set()
                kids = [forest.bag(j - 1, zi) for zi in b.surviving]
                for a, c in zip(kids, kids[1:]):
                    links.add((a.base[-1], c.base[0]))
                mine = frozenset().union(*parts, links) if parts else frozenset(links)
            memo[(j, b.index)] = mine
            want = frozenset(zip(b.base, b.base[1:]))
            w.expect(mine == want,
                     f"bag ({j},{b.index}) recursive base edges != base path")

    w = witness("base-order")
    for j in range(1, ell + 1):
        spans = []
        for b in forest.nonempty(j):
            pos = [path.position[p] for p in b.base]
            w.expect(pos == sorted(pos),
                     f"bag ({j},{b.index}) base not in path order")
            spans.append((min(pos), max(pos), b.index))
        spans.sort()
        for (alo, ahi, ai), (blo, bhi, bi) in zip(spans, spans[1:]):
            w.expect(ahi < blo,
                     f"level {j} bags {ai} and {bi} interleave on the path")

    w = witness("union-assembly")
    assembled = set()
    pieces = ["H", "B"] + [f"level:{j}" for j in range(0, ell + 1)]
    for key in pieces:
        assembled.update(bundle.components.get(key, []))
    actual = set(bundle.graph.edges())
    w.expect(assembled == actual,
             f"union of parts has {len(assembled)} edges, graph {len(actual)}")
    count_cap = (len(bundle.components.get("H", [])) + n
                 + sum(len(bundle.components.get(f"level:{j}", []))
                       for j in range(0, ell + 1)))
    w.expect(bundle.graph.num_edges <= count_cap,
             f"{bundle.graph.num_edges} edges over union bound {count_cap}")

    return [c.entry() for c in checks]


def _induced(graph: SpannerGraph, pts: List[int]):
    """Local edge arrays of the subgraph induced on pts."""
    idx = {p: i for i, p in enumerate(pts)}
    us, vs, ws = [], [], []
    for p in pts:
        ip = idx[p]
        for q, wt in graph.adj[p].items():
            iq = idx.get(q)
            if iq is not None and ip < iq:
                us.append(ip)
                vs.append(iq)
                ws.append(wt)
    return (np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64),
            np.asarray(ws, dtype=np.float64))


def _rounds(m: int, us, vs, ws, sources, snapshots: List[int]):
    """Hop-limited relaxation from a source set; returns dist per snapshot."""
    dist = np.full(m, np.inf)
    dist[sources] = 0.0
    heads = np.concatenate([us, vs])
    tails = np.concatenate([vs, us])
    wts = np.concatenate([ws, ws])
    out = []
    top = max(snapshots) if snapshots else 0
    for r in range(1, top + 1):
        if heads.size:
            nxt = dist.copy()
            np.minimum.at(nxt, tails, dist[heads] + wts)
            dist = nxt
        if r in snapshots:
            out.append(dist.copy())
    while len(out) < len(snapshots):  # all snapshots at 0 rounds
        out.append(dist.copy())
    return out


def verify_bag_reachability(bundle, seed: int = 0) -> List[CheckEntry]:
    """Sampled per-bag checks: cheap paths to base points and between points.

    Every point of a sampled bag must reach some base point of the bag
    inside the induced subgraph, within half the level interval length and
    a hop budget of three times the level count (two times for kernel
    points); any two points of the bag must be joined within twice the
    interval length.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra as csgraph_dijkstra

    forest, params, graph = bundle.forest, bundle.params, bundle.graph
    n = bundle.metric.n
    ell = params.ell
    strict = _is_strict(bundle)
    rng = np.random.default_rng(seed)
    reach = _Witness("bag-reach-base")
    pairw = _Witness("bag-pair-weight")
    reach_worst = 0.0  # worst ratio of measured weight to its bound
    pair_worst = 0.0
    for j in range(1, ell + 1):
        mu = params.mu[j]
        for b in forest.nonempty(j):
            if n > SAMPLE_FULL_LIMIT and rng.random() > 0.05:
                continue
            pts = list(b.points)
            m = len(pts)
            local = {p: i for i, p in enumerate(pts)}
            us, vs, ws = _induced(graph, pts)
            bases = np.asarray([local[p] for p in b.base], dtype=np.int64)
            d2, d3 = _rounds(m, us, vs, ws, bases, [2 * ell, 3 * ell])
            cap = 0.5 * mu * (1.0 + REL_TOL) + 1e-12
            bad = np.nonzero(d3 > cap)[0]
            reach.expect(bad.size == 0,
                         f"bag ({j},{b.index}) point {pts[bad[0]] if bad.size else -1}"
                         f" cannot reach base within {cap:g}")
            if np.isfinite(d3).all() and mu > 0:
                reach_worst = max(reach_worst, float(d3.max()) / (0.5 * mu))
            kern = np.asarray([local[p] for p in b.kernel], dtype=np.int64)
            badk = kern[d2[kern] > cap]
            reach.expect(badk.size == 0,
                         f"bag ({j},{b.index}) kernel point misses the"
                         f" shorter hop budget")
            if m > 1:
                if m > 256:
                    srcs = rng.choice(m, size=32, replace=False)
                else:
                    srcs = np.arange(m)
                mat = csr_matrix((ws, (us, vs)), shape=(m, m))
                dist = csgraph_dijkstra(mat, directed=False, indices=srcs)
                cap2 = 2.0 * mu * (1.0 + REL_TOL) + 1e-12
                worst = float(dist.max())
                pairw.expect(worst <= cap2,
                             f"bag ({j},{b.index}) pair distance {worst:g}"
                             f" over {cap2:g}")
                if math.isfinite(worst) and mu > 0:
                    pair_worst = max(pair_worst, worst / (2.0 * mu))
    out = []
    for wit, worst in ((reach, reach_worst), (pairw, pair_worst)):
        e = wit.entry()
        e.tag = "STRICT"
        e.measured = worst  # fraction of the bound actually used
        e.bound = 1.0
        e.tolerance = REL_TOL
        if e.status == "fail" and not strict:
            e.status = "info"
        out.append(e)
    return out


def run_all(bundle, stretch_target: Optional[float] = None,
            backend=None) -> VerificationReport:
    report = VerificationReport()
    report.add(verify_stretch(bundle, target=stretch_target))
    report.add(verify_hop_diameter(bundle, target=stretch_target,
                                   backend=backend))
    report.add(verify_lightness(bundle))
    report.add(verify_degree(bundle))
    report.add(verify_counters(bundle))
    report.add(verify_structure(bundle))
    report.add(verify_bag_reachability(bundle))
    return report
