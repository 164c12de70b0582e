"""Shared bundles, built once per session.

The fixtures hand out shared objects; any test that mutates one must work on
a copy (copy.deepcopy is fine, the bundles are plain containers).
"""
import pytest

from spanlab import RunConfig, generate_points, run

_CACHE = {}


def build_bundle(gen="uniform", n=64, dim=2, seed=0, **cfg):
    key = (gen, n, dim, seed, tuple(sorted(cfg.items())))
    if key not in _CACHE:
        metric = generate_points(gen, n=n, dim=dim, seed=seed)
        _CACHE[key] = run(metric, RunConfig(seed=seed, **cfg))
    return _CACHE[key]


@pytest.fixture(scope="session")
def strict_small():
    return build_bundle(n=64)


@pytest.fixture(scope="session")
def strict_grid():
    return build_bundle(gen="grid", n=256, rho=4)


@pytest.fixture(scope="session")
def explore_mid():
    # gamma=3 keeps enough levels above for Part II to fire; the clustered
    # layout produces lonely bags, so this run actually attaches some.
    return build_bundle(gen="clustered", n=512, seed=1, mode="explore",
                        gamma=3)
