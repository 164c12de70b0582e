"""Acceptance suite: one test per headline property, calibrated constants.

Each test prints a single [PASS]/[FAIL] line with the measured numbers so a
teed run doubles as the acceptance record. Constants C2/C3 and the band
centers were measured once and are frozen here; the runs below are seeded and
deterministic.
"""
import copy
import math
import time
from contextlib import contextmanager
from itertools import product

import numpy as np
import pytest
from scipy.stats import spearmanr

from spanlab.attach import LabeledGraph, attach, check_star_forest
from spanlab.graph import HamiltonianPath, hop_diameter_at_stretch, \
    shortest_path_matrix
from spanlab.metric import generate_points
from spanlab.pathspan import line_spanner
from spanlab.pipeline import RunConfig, run
from spanlab.verify import (verify_hop_diameter, verify_stretch,
                            verify_structure)

from ._corrupt import CATALOG
from .test_attach import _clockwise, _cycle_graph

C2 = 3   # 1-D degree <= C2 * rho
C3 = 4   # 1-D hops  <= C3 * (log_rho n + rho)
PER_CONFIG_BUDGET_S = 120.0


@contextmanager
def criterion(name):
    info = {"detail": "ok"}
    try:
        yield info
    except BaseException as exc:
        print(f"[FAIL] {name}: {exc}")
        raise
    print(f"[PASS] {name}: {info['detail']}")


def _assert_counter_boxes(bundle):
    p = bundle.params
    box = min(p.ell, p.gamma + p.eta)
    mx = bundle.counters.maxima()
    assert mx["large"] <= 1, mx
    assert mx["single"] <= box, (mx, box)
    assert mx["plain"] <= box, (mx, box)
    assert mx["load"] <= 2 * box + 1, (mx, box)


def _assert_structure_green(bundle):
    for e in verify_structure(bundle):
        assert e.status == "pass", f"{e.name}: {e.detail}"


def test_line_spanner_exact_low_degree_low_hop():
    with criterion("line-spanner") as c:
        worst_hop_ratio = 0.0
        for n, rho in product((64, 256), (2, 3, 8)):
            metric = generate_points("line", n)
            path = HamiltonianPath(list(range(n)), metric)
            ls = line_spanner(path, rho)
            want = metric.distance_matrix()
            got = shortest_path_matrix(ls)
            assert np.array_equal(got, want), (n, rho)
            assert ls.max_degree() <= C2 * rho, (n, rho, ls.max_degree())
            h = hop_diameter_at_stretch(ls, metric, 1.0)
            budget = C3 * (math.log(n) / math.log(rho) + rho)
            assert h <= budget, (n, rho, h, budget)
            worst_hop_ratio = max(worst_hop_ratio, h / budget)
        c["detail"] = (f"exact on all pairs up to n=256; degree <= {C2}*rho, "
                       f"hop budget use <= {worst_hop_ratio:.0%}")


def _random_labeled_graph(rng):
    n = int(rng.integers(1, 201))
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < rng.uniform(0.02, 0.2)
    edges = list(zip(iu[mask].tolist(), ju[mask].tolist()))
    risky = np.nonzero(rng.random(n) < rng.uniform(0.1, 0.9))[0].tolist()
    return LabeledGraph(range(n), risky, edges)


def test_attach_on_thousand_random_graphs():
    with criterion("attach") as c:
        rng = np.random.default_rng(7)
        for i in range(1000):
            g = _random_labeled_graph(rng)
            sf = attach(g)
            ok, problems = check_star_forest(g, sf)
            assert ok, (i, problems)
            assert set(g.non_isolated_risky()) <= sf.covered()
        # constructed cycle instances, both parities
        even = _cycle_graph(4)
        stars = attach(even, picker=_clockwise).stars
        assert all(len(s.leaves) == 1 for s in stars) and len(stars) == 2
        odd = _cycle_graph(7)
        stars = attach(odd, picker=_clockwise).stars
        assert sorted(len(s.leaves) for s in stars) == [1, 1, 2]
        assert check_star_forest(odd, attach(odd, picker=_clockwise))[0]
        c["detail"] = ("1000 random graphs (n<=200) covered; even cycle -> "
                       "single-leaf stars, odd cycle -> one two-leaf star")


def test_structure_suite_and_fault_injection(strict_small, strict_grid,
                                             explore_mid):
    with criterion("structure-witnesses") as c:
        for b in (strict_small, strict_grid, explore_mid):
            _assert_structure_green(b)
        tripped = 0
        for name, corrupt in sorted(CATALOG.items()):
            bundle = copy.deepcopy(explore_mid)
            corrupt(bundle)
            entries = {e.name: e for e in verify_structure(bundle)}
            assert entries[name].status == "fail", name
            tripped += 1
        c["detail"] = (f"all {len(CATALOG)} witness checks green on healthy "
                       f"runs and each fails under its paired fault")


def test_counter_bounds_and_explore_run(strict_small, strict_grid):
    with criterion("counters") as c:
        for b in (strict_small, strict_grid):
            _assert_counter_boxes(b)
        b = run(generate_points("uniform", 4096, seed=0),
                RunConfig(rho=2, eps=0.5, t=1.5, basic="theta",
                          mode="explore", gamma=3, seed=0))
        assert len(b.attachments) > 0, "part II never fired"
        _assert_structure_green(b)
        mx = b.counters.maxima()
        box = min(b.params.ell, b.params.gamma + b.params.eta)
        c["detail"] = (f"strict maxima inside boxes; explore gamma=3 n=4096: "
                       f"{len(b.attachments)} attachments, maxima {mx} "
                       f"(box {box}, load box {2 * box + 1})")


def test_base_edges_on_hundred_runs():
    with criterion("base-edges") as c:
        configs = list(product(("uniform", "clustered", "grid"),
                               (48, 96, 160, 256), (2, 4),
                               ("strict", "explore"), (0, 1))) \
            + list(product(("uniform", "clustered"), (320,), (2,),
                           ("strict", "explore"), (2,)))
        assert len(configs) == 100
        for gen, n, rho, mode, seed in configs:
            basic = "theta" if seed == 0 else "greedy"
            b = run(generate_points(gen, n, seed=seed),
                    RunConfig(rho=rho, eps=0.5, t=1.5, basic=basic,
                              mode=mode, gamma=3, seed=seed))
            base = b.components["B"]
            assert len(base) <= n, (gen, n, rho, mode)
            deg = {}
            for u, v, _ in base:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            assert max(deg.values(), default=0) <= 2, (gen, n, rho, mode)
            budget = b.path.length * (1.0 + 1e-9)
            for j, edges in b.forest.base_edges.items():
                w = sum(b.metric.distance(u, v) for u, v in edges)
                assert w <= budget, (gen, n, rho, mode, j)
            _assert_structure_green(b)
            if mode == "strict":
                _assert_counter_boxes(b)
        c["detail"] = ("100 seeded runs across modes: |B| <= n, degree(B) "
                       "<= 2, per-level base weight <= path length")


def test_hop_diameter_bound_and_trend():
    with criterion("hop-diameter") as c:
        for n, rho, seed in product((128, 512), (2, 4), (0, 1)):
            b = run(generate_points("uniform", n, seed=seed),
                    RunConfig(rho=rho, eps=0.5, t=1.5, basic="greedy",
                              seed=seed))
            e = verify_hop_diameter(b)
            assert e.status == "pass", (n, rho, seed, e)
        rhos = (2, 3, 4, 6, 8, 12, 16)
        corr = {}
        for gen in ("uniform", "clustered"):
            hs = []
            for rho in rhos:
                vals = []
                for seed in (0, 1, 2):
                    b = run(generate_points(gen, 256, seed=seed),
                            RunConfig(rho=rho, eps=0.1, t=1.5,
                                      basic="greedy", seed=seed))
                    vals.append(verify_hop_diameter(b).measured)
                hs.append(sum(vals) / len(vals))
            r, _ = spearmanr(rhos, hs)
            assert r <= -0.7, (gen, rhos, hs, r)
            corr[gen] = r
        c["detail"] = ("h <= 12*(backend hops + log_rho n + rho) on all "
                       "strict runs; h falls with rho at n=256: spearman "
                       + ", ".join(f"{g} {r:+.2f}" for g, r in corr.items()))


def _lightness_ratio(gen, n, rho, seed=0):
    b = run(generate_points(gen, n, seed=seed),
            RunConfig(rho=rho, eps=0.5, t=1.5, basic="theta", seed=seed))
    psi = b.graph.total_weight() / b.mst_weight
    return psi / (rho * math.log(n) / math.log(rho))


def test_lightness_scaling():
    with criterion("lightness") as c:
        n_ratios = [_lightness_ratio("grid", 2 ** k, 2) for k in range(8, 14)]
        fit_n = sum(n_ratios) / len(n_ratios)
        for v in n_ratios:
            assert abs(v / fit_n - 1.0) <= 0.30, (n_ratios, fit_n)
        rho_ratios = [_lightness_ratio("grid", 4096, rho)
                      for rho in (2, 4, 8, 16)]
        fit_rho = sum(rho_ratios) / len(rho_ratios)
        for v in rho_ratios:
            assert abs(v / fit_rho - 1.0) <= 0.50, (rho_ratios, fit_rho)
        c["detail"] = (f"weight/mst over rho*log_rho n: fitted constant "
                       f"{fit_n:.3f} (n sweep, spread "
                       f"{max(abs(v / fit_n - 1) for v in n_ratios):.0%} of "
                       f"+-30%), {fit_rho:.3f} (rho sweep, spread "
                       f"{max(abs(v / fit_rho - 1) for v in rho_ratios):.0%} "
                       f"of +-50%)")


def test_size_and_time_scaling():
    with criterion("size-time") as c:
        cfg = dict(rho=2, eps=0.5, t=1.5, basic="theta")
        run(generate_points("uniform", 256, seed=9),
            RunConfig(seed=9, **cfg))  # warmup, keeps first-touch noise out
        sizes, times = [], []
        for k in (8, 10, 12):
            n = 2 ** k
            es, ts = [], []
            for seed in (0, 1, 2):
                pts = generate_points("uniform", n, seed=seed)
                t0 = time.perf_counter()
                b = run(pts, RunConfig(seed=seed, **cfg))
                ts.append(time.perf_counter() - t0)
                es.append(b.graph.num_edges / n)
            sizes.append(sum(es) / 3)
            times.append(sum(ts) / 3)
        center = sum(sizes) / len(sizes)
        for v in sizes:
            assert abs(v / center - 1.0) <= 0.25, (sizes, center)
        doubling = [math.sqrt(times[i + 1] / times[i]) for i in range(2)]
        for f in doubling:
            assert f <= 2.6, (times, doubling)
        c["detail"] = (f"edges/n {['%.1f' % s for s in sizes]} within +-25% "
                       f"of {center:.1f}; time per doubling "
                       f"{['%.2fx' % f for f in doubling]} (budget 2.6x)")


def test_stretch_grid_every_seed():
    with criterion("stretch") as c:
        worst, slowest = 0.0, 0.0
        for gen, n, rho, seed in product(("uniform", "clustered", "grid"),
                                         (64, 256, 1024), (2, 4), range(5)):
            t0 = time.perf_counter()
            b = run(generate_points(gen, n, seed=seed),
                    RunConfig(rho=rho, eps=0.5, t=1.05, basic="greedy",
                              seed=seed))
            e = verify_stretch(b)
            dt = time.perf_counter() - t0
            assert dt < PER_CONFIG_BUDGET_S, (gen, n, rho, seed, dt)
            assert e.status == "pass", (gen, n, rho, seed, e)
            assert e.bound == pytest.approx(1.55)
            _assert_counter_boxes(b)
            _assert_structure_green(b)
            worst = max(worst, e.measured)
            slowest = max(slowest, dt)
        c["detail"] = (f"90 configs x greedy t=1.05: worst stretch "
                       f"{worst:.4f} <= 1.55, slowest config {slowest:.1f}s "
                       f"< {PER_CONFIG_BUDGET_S:.0f}s")
