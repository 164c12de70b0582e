import random

import pytest

from spanlab import InvariantViolation
from spanlab.attach import (LabeledGraph, Star, attach, check_star_forest)


def random_labeled_graph(rng, max_n=60):
    n = rng.randint(1, max_n)
    vertices = range(n)
    p_edge = rng.uniform(0.02, 0.3)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p_edge]
    risky = [v for v in vertices if rng.random() < rng.uniform(0.1, 0.9)]
    return LabeledGraph(vertices, risky, edges)


@pytest.mark.parametrize("seed", range(8))
def test_random_graphs_produce_valid_star_forests(seed):
    rng = random.Random(seed)
    for _ in range(25):
        g = random_labeled_graph(rng)
        sf = attach(g)
        ok, problems = check_star_forest(g, sf)
        assert ok, problems
        assert set(g.non_isolated_risky()) <= sf.covered()


def test_single_risky_vertex_attaches_to_its_safe_neighbor():
    g = LabeledGraph([0, 1, 2], risky=[2], edges=[(0, 2), (1, 2)])
    sf = attach(g)
    # default pick prefers safe neighbors, smallest id among those
    assert sf.stars == (Star(0, (2,)),)


def test_safe_neighbor_beats_smaller_risky_id():
    g = LabeledGraph([0, 1, 2], risky=[0, 2], edges=[(0, 2), (1, 2)])
    sf = attach(g)
    assert sf.stars == (Star(2, (0,)),)
    ok, problems = check_star_forest(g, sf)
    assert ok, problems


def test_isolated_risky_vertices_are_exempt():
    g = LabeledGraph([0, 1, 2, 3], risky=[0, 3], edges=[(0, 1)])
    sf = attach(g)
    assert 3 not in sf.covered()
    ok, _ = check_star_forest(g, sf)
    assert ok


def _cycle_graph(length):
    vertices = list(range(length))
    edges = [(i, (i + 1) % length) for i in range(length)]
    return LabeledGraph(vertices, vertices, edges)


def _clockwise(g, z):
    nxt = (z + 1) % len(g.vertices)
    assert nxt in g.adj[z]
    return nxt


def test_even_cycle_splits_into_single_leaf_stars():
    g = _cycle_graph(4)
    sf = attach(g, picker=_clockwise)
    assert sf.stars == (Star(1, (0,)), Star(3, (2,)))
    ok, problems = check_star_forest(g, sf)
    assert ok, problems


def test_odd_cycle_ends_with_a_two_leaf_star():
    g = _cycle_graph(3)
    sf = attach(g, picker=_clockwise)
    assert sf.stars == (Star(1, (0, 2)),)
    ok, problems = check_star_forest(g, sf)
    assert ok, problems


def test_longer_odd_cycle():
    g = _cycle_graph(7)
    sf = attach(g, picker=_clockwise)
    assert sf.covered() == set(range(7))
    assert sorted(len(s.leaves) for s in sf.stars) == [1, 1, 2]
    ok, problems = check_star_forest(g, sf)
    assert ok, problems


def test_picker_must_choose_a_neighbor():
    g = _cycle_graph(4)
    with pytest.raises(InvariantViolation):
        attach(g, picker=lambda graph, z: (z + 2) % 4)


def test_labeled_graph_guards():
    with pytest.raises(InvariantViolation):
        LabeledGraph([0, 1], risky=[2], edges=[])
    with pytest.raises(InvariantViolation):
        LabeledGraph([0, 1], risky=[], edges=[(0, 0)])
    with pytest.raises(InvariantViolation):
        LabeledGraph([0, 1], risky=[], edges=[(0, 5)])
    g = LabeledGraph([0, 1], risky=[], edges=[(0, 1), (1, 0)])
    assert g.edges == frozenset({(0, 1)})


def test_check_star_forest_catches_planted_defects():
    g = LabeledGraph([0, 1, 2, 3], risky=[1, 2],
                     edges=[(0, 1), (1, 2), (2, 3)])
    from spanlab.attach import StarForest
    ok, problems = check_star_forest(g, StarForest((Star(0, ()),)))
    assert not ok and any("leaf" in p or "leaves" in p for p in problems)
    ok, problems = check_star_forest(
        g, StarForest((Star(0, (1,)), Star(3, (1,)))))
    assert not ok
    ok, problems = check_star_forest(g, StarForest((Star(0, (3,)),)))
    assert not ok  # (0,3) is not an input edge and 3 is safe
    ok, problems = check_star_forest(g, StarForest((Star(0, (1,)),)))
    assert not ok  # risky 2 left uncovered