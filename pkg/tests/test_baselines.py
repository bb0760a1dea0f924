"""Tests for K-means, the kernel K-means score and spectral clustering."""

import numpy as np
import pytest

from miclust import KernelSpec, ari, gram, kernel_kmeans_score, kmeans, spectral
from miclust.baselines import _kmeans_pp_init, _lloyd
from miclust.data import make_circles, make_gaussian_blobs, make_rng, standardize


def test_kmeans_separated_blobs_exact():
    dm = make_gaussian_blobs(np.array([[0.0, 0.0], [100.0, 0.0]]), 0.5, 30, 0)
    labels, centers, inertia = kmeans(dm.values, 2, rng=0)
    assert ari(dm.labels, labels) == 1.0
    assert inertia >= 0.0
    got = centers[np.argsort(centers[:, 0])]
    assert np.allclose(got, [[0.0, 0.0], [100.0, 0.0]], atol=0.5)


def test_lloyd_inertia_is_monotone():
    X = make_rng(0).normal(size=(60, 2))
    centers = _kmeans_pp_init(X, 4, make_rng(1))
    _, _, _, history = _lloyd(X, centers.copy(), 100, 0.0)
    assert all(a >= b - 1e-9 for a, b in zip(history, history[1:]))


def test_kmeans_no_empty_clusters():
    X = make_rng(2).normal(size=(20, 2))
    labels, _, _ = kmeans(X, 6, n_init=3, rng=0)
    assert set(labels.tolist()) == set(range(6))


def test_kmeans_restarts_take_the_best_inertia():
    X = standardize(make_circles(60, 0.05, 0.3, 0)).values
    _, _, single = kmeans(X, 3, n_init=1, rng=0)
    _, _, many = kmeans(X, 3, n_init=20, rng=0)
    assert many <= single + 1e-12


def test_kmeans_validation():
    X = np.zeros((3, 2))
    with pytest.raises(ValueError):
        kmeans(X, 4)
    with pytest.raises(ValueError):
        kmeans(X, 0)
    with pytest.raises(ValueError):
        kmeans(X, 2, n_init=0)


def test_kernel_score_matches_inertia_linear_kernel():
    # with a linear kernel: sum_i ||x_i - c_{k(i)}||^2 = trace(G) + score
    gen = make_rng(3)
    for _ in range(100):
        n = int(gen.integers(4, 25))
        X = gen.normal(size=(n, 2))
        labels = gen.integers(0, 3, size=n)
        labels[:3] = [0, 1, 2]  # keep every cluster populated
        G = gram(X, X, KernelSpec("linear")).values
        score = kernel_kmeans_score(labels, G)
        inertia = 0.0
        for k in range(3):
            C = X[labels == k]
            inertia += ((C - C.mean(axis=0)) ** 2).sum()
        assert abs(inertia - (np.trace(G) + score)) < 1e-9


def test_kernel_score_rejects_empty_cluster():
    with pytest.raises(ValueError):
        kernel_kmeans_score(np.array([0, 0, 2]), np.eye(3))


def test_kernel_score_rejects_wrong_shape():
    with pytest.raises(ValueError):
        kernel_kmeans_score(np.array([0, 1]), np.eye(3))


def test_spectral_separates_circles():
    dm = standardize(make_circles(200, 0.05, 0.1, 0))
    labels = spectral(dm.values, 2, rng=0)
    assert ari(dm.labels, labels) == 1.0


def test_spectral_respects_custom_affinity():
    dm = make_gaussian_blobs(np.array([[0.0, 0.0], [10.0, 0.0]]), 0.3, 20, 1)
    labels = spectral(dm.values, 2, affinity=KernelSpec("rbf", 0.5), rng=0)
    assert ari(dm.labels, labels) == 1.0


def test_spectral_validation():
    with pytest.raises(ValueError):
        spectral(np.zeros((3, 2)), 4)
