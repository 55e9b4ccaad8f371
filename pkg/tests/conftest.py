import numpy as np
import pytest

from fuzzyclust import core


def random_partition(rng, n, c):
    w = rng.random((n, c))
    return w / w.sum(axis=1, keepdims=True)


def random_instance(rng, n=None, k=None, c=None, alpha=None):
    """Random dataset + partition + freshly updated model state."""
    n = n or int(rng.integers(20, 200))
    k = k or int(rng.choice([2, 3, 5]))
    c = c or int(rng.integers(2, 5))
    alpha = alpha or float(rng.choice([1.5, 2.0, 3.0]))
    points = rng.normal(size=(n, k)) * rng.uniform(0.5, 3.0, size=k)
    w = random_partition(rng, n, c)
    centers = core.update_centers(points, w, alpha)
    covs, factors = core.fuzzy_covariance(points, w, centers, alpha)
    d2 = core.mahalanobis_sq_matrix(points, centers, factors)
    stats = core.cluster_stats(w, factors, alpha)
    return {
        "points": points,
        "w": w,
        "alpha": alpha,
        "k": k,
        "c": c,
        "centers": centers,
        "covs": covs,
        "factors": factors,
        "d2": d2,
        "stats": stats,
    }


def random_stats(rng, c):
    return core.ClusterStats(
        cardinality=rng.uniform(0.5, 50.0, size=c),
        volume=rng.uniform(0.1, 10.0, size=c),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
