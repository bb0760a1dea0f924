"""External and internal clustering evaluation: adjusted Rand index and silhouette."""

from __future__ import annotations

import numpy as np

from miclust.kernels import pairwise_sq_dist


def contingency(a, b) -> np.ndarray:
    """Count matrix between two labelings over the same samples."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("labelings must be 1-d and of equal length")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    return table


def _comb2(x):
    return x * (x - 1) // 2


def ari(a, b) -> float:
    """Adjusted Rand index between two labelings.

    Chance-corrected pair-count agreement; 1.0 for identical partitions up
    to relabeling. When both partitions are a single cluster the denominator
    degenerates and the score is defined as 1.0.
    """
    table = contingency(a, b)
    n = int(table.sum())
    if n < 2:
        raise ValueError("ARI requires at least 2 samples")
    sum_cells = int(_comb2(table).sum())
    sum_rows = int(_comb2(table.sum(axis=1)).sum())
    sum_cols = int(_comb2(table.sum(axis=0)).sum())
    total = int(_comb2(n))
    # integer numerator/denominator keep hand-checkable cases exact
    numer = 2 * (total * sum_cells - sum_rows * sum_cols)
    denom = total * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols
    if denom == 0:
        return 1.0
    return numer / denom


def silhouette(X, labels, precomputed: bool = False):
    """Mean and per-sample silhouette scores.

    X is either an n x d data matrix (Euclidean distance) or, with
    precomputed=True, an n x n distance matrix, so kernel-induced distances
    can be scored directly. Samples in singleton clusters score 0, as do
    samples where both Intra and Outer vanish.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if precomputed:
        D = np.asarray(X, dtype=np.float64)
        if D.shape != (labels.size, labels.size):
            raise ValueError("precomputed distance matrix must be n x n")
    else:
        D = np.sqrt(pairwise_sq_dist(np.asarray(X, dtype=np.float64), np.asarray(X, dtype=np.float64)))
    uniq = np.unique(labels)
    if uniq.size < 2:
        raise ValueError("silhouette requires at least 2 clusters")
    n = labels.size
    masks = {k: labels == k for k in uniq}
    sizes = {k: int(m.sum()) for k, m in masks.items()}
    scores = np.zeros(n)
    # mean distance from each sample to each cluster
    mean_to = np.column_stack([D[:, masks[k]].sum(axis=1) / sizes[k] for k in uniq])
    col = {k: j for j, k in enumerate(uniq)}
    for i in range(n):
        k = labels[i]
        if sizes[k] == 1:
            continue
        intra = D[i, masks[k]].sum() / (sizes[k] - 1)
        outer = min(mean_to[i, col[kk]] for kk in uniq if kk != k)
        denom = max(intra, outer)
        if denom > 0:
            scores[i] = (outer - intra) / denom
    return float(scores.mean()), scores
