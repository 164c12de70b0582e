import numpy as np
import pytest

from spanlab import (HamiltonianPath, generate_points, hop_bounded_distances,
                     shortest_path_matrix)
from spanlab.pathspan import (EDGES_PER_POINT_BOUND, build_path_spanner,
                              hop_budget, line_spanner,
                              path_spanner_position_edges, tree_depth)


def _path_over(metric, seed):
    rng = np.random.default_rng(seed)
    return HamiltonianPath([int(x) for x in rng.permutation(metric.n)], metric)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 33, 100])
@pytest.mark.parametrize("rho", [2, 3, 5])
def test_line_spanner_is_exact_for_the_path_metric(n, rho):
    metric = generate_points("uniform", n=n, dim=2, seed=n + rho)
    path = _path_over(metric, seed=1)
    ls = line_spanner(path, rho)
    got = shortest_path_matrix(ls)
    want = np.abs(path.prefix[:, None] - path.prefix[None, :])
    # rows/cols of `got` are ids; map through positions
    perm = np.asarray(path.order)
    assert np.allclose(got[np.ix_(perm, perm)], want, rtol=1e-9, atol=1e-12)


@pytest.mark.parametrize("rho", [2, 4, 9])
def test_position_edges_degree_and_size(rho):
    for n in (1, 2, 5, 17, 64, 257, 1000):
        edges = path_spanner_position_edges(n, rho)
        assert len(edges) <= EDGES_PER_POINT_BOUND * n
        deg = np.zeros(n, dtype=int)
        for a, b in edges:
            assert 0 <= a < b < n
            deg[a] += 1
            deg[b] += 1
        assert deg.max(initial=0) <= max(3, rho) + 1
        assert len(set(edges)) == len(edges)
    with pytest.raises(ValueError):
        path_spanner_position_edges(5, 1)


@pytest.mark.parametrize("rho", [2, 5])
def test_exact_paths_fit_in_the_hop_budget(rho):
    n = 150
    metric = generate_points("line", n=n, dim=1)
    path = HamiltonianPath(list(range(n)), metric)
    ls = line_spanner(path, rho)
    budget = hop_budget(n, rho)
    limited = hop_bounded_distances(ls, budget)
    want = np.abs(path.prefix[:, None] - path.prefix[None, :])
    assert np.allclose(limited, want, rtol=1e-9, atol=1e-12)


def test_tree_depth_small_cases():
    assert tree_depth(3, 2) == 1
    assert tree_depth(4, 4) == 1
    assert tree_depth(10, 2) == 3  # 10 -> 4 -> 1 with k=3
    assert tree_depth(1000, 2) > tree_depth(1000, 8)


def test_metric_reweighting_never_stretches():
    # true-metric weights are <= path weights edge by edge, so all pairs
    # stay within the path distance
    metric = generate_points("uniform", n=60, dim=2, seed=12)
    path = _path_over(metric, seed=3)
    g = build_path_spanner(path, metric, rho=3)
    w = shortest_path_matrix(g)
    for p in range(0, 60, 7):
        for q in range(1, 60, 11):
            assert w[p, q] <= path.path_distance(p, q) * (1 + 1e-9) + 1e-12
            assert w[p, q] >= metric.distance(p, q) - 1e-12
