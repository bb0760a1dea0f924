"""Tests for the adjusted Rand index and silhouette score."""

import numpy as np
import pytest

from miclust import ari, silhouette
from miclust.data import make_rng
from miclust.kernels import pairwise_sq_dist
from miclust.metrics import contingency


def test_contingency_counts():
    table = contingency([0, 0, 1, 1], [0, 1, 1, 1])
    assert np.array_equal(table, np.array([[1, 1], [0, 2]]))


def test_ari_identity_is_one():
    labels = make_rng(0).integers(0, 4, size=50)
    labels[:4] = [0, 1, 2, 3]
    assert ari(labels, labels) == 1.0


def test_ari_relabeling_invariance():
    gen = make_rng(1)
    a = gen.integers(0, 3, size=40)
    b = gen.integers(0, 3, size=40)
    perm = {0: 2, 1: 0, 2: 1}
    b_renamed = np.array([perm[v] for v in b])
    assert abs(ari(a, b) - ari(a, b_renamed)) < 1e-15


def test_ari_hand_case_is_minus_half():
    assert ari([0, 0, 1, 1], [0, 1, 0, 1]) == -0.5


def test_ari_degenerate_single_clusters():
    assert ari([0, 0, 0], [1, 1, 1]) == 1.0


def test_ari_random_labelings_average_near_zero():
    gen = make_rng(2)
    values = [ari(gen.integers(0, 3, size=100), gen.integers(0, 3, size=100)) for _ in range(100)]
    assert abs(np.mean(values)) < 0.02


def test_ari_validation():
    with pytest.raises(ValueError):
        ari([0], [0])
    with pytest.raises(ValueError):
        ari([0, 1], [0, 1, 2])


def test_silhouette_hand_case():
    X = np.array([[0.0], [0.1], [10.0], [10.1]])
    mean, scores = silhouette(X, [0, 0, 1, 1])
    assert abs(mean - 0.9899997499937521) < 1e-12
    assert abs(scores[0] - 9.95 / 10.05) < 1e-12
    assert abs(scores[1] - 9.85 / 9.95) < 1e-12


def test_silhouette_bounds():
    gen = make_rng(3)
    for _ in range(20):
        X = gen.normal(size=(30, 2))
        labels = gen.integers(0, 3, size=30)
        labels[:3] = [0, 1, 2]
        mean, scores = silhouette(X, labels)
        assert np.all(scores >= -1.0) and np.all(scores <= 1.0)
        assert -1.0 <= mean <= 1.0


def test_silhouette_precomputed_matches_euclidean():
    gen = make_rng(4)
    X = gen.normal(size=(25, 3))
    labels = gen.integers(0, 2, size=25)
    labels[:2] = [0, 1]
    D = np.sqrt(pairwise_sq_dist(X, X))
    direct = silhouette(X, labels)
    via_matrix = silhouette(D, labels, precomputed=True)
    assert abs(direct[0] - via_matrix[0]) < 1e-12
    assert np.allclose(direct[1], via_matrix[1])


def test_silhouette_singleton_scores_zero():
    X = np.array([[0.0], [0.1], [5.0]])
    mean, scores = silhouette(X, [0, 0, 1])
    assert scores[2] == 0.0


def test_silhouette_coincident_points_score_zero():
    X = np.zeros((4, 2))
    mean, scores = silhouette(X, [0, 0, 1, 1])
    assert mean == 0.0


def test_silhouette_validation():
    with pytest.raises(ValueError):
        silhouette(np.zeros((3, 2)), [0, 0, 0])
    with pytest.raises(ValueError):
        silhouette(np.zeros((3, 2)), [0, 1], precomputed=True)
