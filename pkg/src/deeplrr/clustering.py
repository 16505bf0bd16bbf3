"""Spectral clustering on learned coefficients: affinity, normalized-cut
embedding, and a deterministic k-means.

The affinity W = (|Z| + |Z^T|)/2 is symmetric and non-negative by
construction. The embedding uses the symmetric normalized Laplacian
L = I - D^{-1/2} W D^{-1/2} (zero-degree rows of D^{-1/2} set to zero),
takes the k eigenvectors of the smallest eigenvalues, and normalizes rows
to unit length. k-means is Lloyd with k-means++ seeding, best of
``restarts`` runs seeded seed+0..seed+restarts-1, ties broken by the
lowest seed offset.
"""

from dataclasses import dataclass

import numpy as np
from threadpoolctl import threadpool_limits


@dataclass
class ClusterResult:
    """Labels plus the intermediates that produced them."""

    labels: np.ndarray
    embedding: np.ndarray
    kmeans_objective: float
    affinity: np.ndarray


def build_affinity(Z):
    """Symmetric non-negative affinity (|Z| + |Z^T|) / 2."""
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got {Z.shape}")
    return (np.abs(Z) + np.abs(Z.T)) / 2.0


def spectral_embed(W, k):
    """Rows of the k smallest normalized-Laplacian eigenvectors, unit-scaled.

    Zero-degree vertices get zero embedding rows rather than failing.
    """
    W = np.asarray(W, dtype=np.float64)
    N = W.shape[0]
    if not 1 <= k <= N:
        raise ValueError(f"k must be in 1..{N}, got {k}")
    degree = W.sum(axis=1)
    inv_sqrt = np.zeros(N)
    positive = degree > 0
    inv_sqrt[positive] = 1.0 / np.sqrt(degree[positive])
    lap = np.eye(N) - inv_sqrt[:, None] * W * inv_sqrt[None, :]
    # single BLAS thread keeps the eigenbasis reproducible across hosts
    with threadpool_limits(limits=1):
        _, vectors = np.linalg.eigh(lap)
    embedding = vectors[:, :k].copy()
    row_norm = np.linalg.norm(embedding, axis=1)
    nonzero = row_norm > 0
    embedding[nonzero] /= row_norm[nonzero, None]
    return embedding


def _pairwise_sq(points, centers):
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _kmeanspp_init(points, k, rng):
    N = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(N)]
    d2 = ((points - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = rng.choice(N, p=d2 / total)
        else:
            idx = rng.integers(N)
        centers[j] = points[idx]
        d2 = np.minimum(d2, ((points - centers[j]) ** 2).sum(axis=1))
    return centers


def _lloyd(points, centers, max_iter=300):
    N, k = points.shape[0], centers.shape[0]
    labels = None
    objective = np.inf
    for _ in range(max_iter):
        d2 = _pairwise_sq(points, centers)
        new_labels = d2.argmin(axis=1)
        own = d2[np.arange(N), new_labels]
        new_objective = float(own.sum())
        # Lloyd never increases the within-cluster sum of squares
        assert new_objective <= objective * (1 + 1e-12) + 1e-12
        if labels is not None and np.array_equal(new_labels, labels):
            return labels, new_objective
        labels, objective = new_labels, new_objective
        for j in range(k):
            members = labels == j
            if members.any():
                centers[j] = points[members].mean(axis=0)
            else:
                # empty cluster: reseed at the point farthest from its centroid
                far = int(np.argmax(own))
                centers[j] = points[far]
                own[far] = 0.0
    return labels, objective


def kmeans(points, k, seed, restarts=20):
    """Best-of-restarts Lloyd with k-means++ seeding; deterministic by seed.

    Returns (labels, within-cluster sum of squares).
    """
    points = np.asarray(points, dtype=np.float64)
    if k > points.shape[0]:
        raise ValueError(f"k={k} exceeds number of points {points.shape[0]}")
    best_labels, best_objective = None, np.inf
    with threadpool_limits(limits=1):
        for offset in range(restarts):
            rng = np.random.default_rng(seed + offset)
            centers = _kmeanspp_init(points, k, rng)
            labels, objective = _lloyd(points, centers)
            if objective < best_objective:
                best_labels, best_objective = labels, objective
    return best_labels, best_objective


def ncut_cluster(Z, k, seed, restarts=20):
    """Coefficients -> affinity -> spectral embedding -> k-means."""
    affinity = build_affinity(Z)
    embedding = spectral_embed(affinity, k)
    labels, objective = kmeans(embedding, k, seed, restarts)
    return ClusterResult(labels=labels, embedding=embedding,
                         kmeans_objective=objective, affinity=affinity)
