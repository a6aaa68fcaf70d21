"""Synthetic geometries with controlled neighborhood composition.

Rows come in well-separated clusters of three (mutual Hamming distance at
most 2, at least 4 across clusters), so with k = 3 every row's neighborhood
is exactly its own cluster. Assigning f-values per cluster then pins every
rho_i: a cluster with 0 or 3 ones is maximally stable, a cluster with 1 or
2 ones is maximally unstable for majority voting.
"""

from __future__ import annotations

import numpy as np

from .bits import BitMatrix
from .exceptions import ConfigError

CLUSTER_SIZE = 3


def clustered_inputs(n_clusters: int) -> BitMatrix:
    """3*n_clusters rows; cluster c occupies rows 3c..3c+2."""
    if n_clusters < 1:
        raise ConfigError("need at least one cluster")
    r = 2 + 3 * n_clusters
    rows = np.zeros((CLUSTER_SIZE * n_clusters, r), dtype=np.uint8)
    for c in range(n_clusters):
        base = np.zeros(r, dtype=np.uint8)
        base[2 + 3 * c: 2 + 3 * (c + 1)] = 1
        rows[3 * c] = base
        rows[3 * c + 1] = base.copy()
        rows[3 * c + 1, 0] ^= 1
        rows[3 * c + 2] = base.copy()
        rows[3 * c + 2, 1] ^= 1
    return BitMatrix(rows)


def cluster_truth(ones_per_cluster) -> np.ndarray:
    """Truth vector with the requested count of f=1 rows in each cluster."""
    ones_per_cluster = list(ones_per_cluster)
    truth = np.zeros(CLUSTER_SIZE * len(ones_per_cluster), dtype=np.uint8)
    for c, s in enumerate(ones_per_cluster):
        if not 0 <= s <= CLUSTER_SIZE:
            raise ConfigError(f"cluster one-count {s} outside [0, 3]")
        truth[3 * c: 3 * c + s] = 1
    return truth


def best_case_dataset(n_clusters: int) -> tuple[BitMatrix, np.ndarray]:
    """Every 3-neighborhood constant (rho_i in {0, 1})."""
    X = clustered_inputs(n_clusters)
    return X, cluster_truth([0 if c % 2 else 3 for c in range(n_clusters)])


def worst_case_dataset(n_clusters: int) -> tuple[BitMatrix, np.ndarray]:
    """Every 3-neighborhood balanced (rho_i in {1/3, 2/3})."""
    X = clustered_inputs(n_clusters)
    return X, cluster_truth([1 if c % 2 else 2 for c in range(n_clusters)])


def mixed_case_dataset(n_clusters: int) -> tuple[BitMatrix, np.ndarray]:
    """First half of the rows balanced, second half constant (even counts).

    n_clusters must be even so the row count splits exactly in half.
    """
    if n_clusters % 2 != 0:
        raise ConfigError("mixed geometry needs an even number of clusters")
    half = n_clusters // 2
    X = clustered_inputs(n_clusters)
    counts = [1 if c % 2 else 2 for c in range(half)]
    counts += [0 if c % 2 else 3 for c in range(half)]
    return X, cluster_truth(counts)
