"""scikit-learn style estimator wrapping training and spectral clustering."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .clustering import ncut_cluster
from .config import SolverConfig
from .network import (
    deep_principal_features,
    deep_reconstruction,
    deep_salient_features,
    train_network,
)


class DeepLRR(BaseEstimator, ClusterMixin):
    """Deep subspace clustering by stacked collaborative low-rank layers.

    Each layer decomposes its input A into a principal part A Z, a salient
    part P A, and a sparse error E, then feeds the bilinear reconstruction
    P A Z to the next layer. The deepest coefficient matrix defines an
    affinity (|Z| + |Z^T|)/2 that is clustered by normalized cuts.

    Parameters
    ----------
    n_clusters : int, default 10
        Number of clusters.
    n_layers : int, default 3
        Depth of the stack.
    lambda1 : float, default 0.1
        Sparsity weight of the first layer.
    alpha : float, default 1.0
        Weight of the neighborhood reconstruction term.
    rho : float, default 1.0
        Growth factor of the per-layer sparsity weight, >= 1.
    mu0, mu_max, eta : float
        Inexact-ALM penalty schedule.
    eps : float, default 1e-7
        Infinity-norm feasibility tolerance of each layer solve.
    max_iter : int, default 500
        Iteration cap per layer.
    kmeans_restarts : int, default 20
        k-means restarts on the spectral embedding.
    random_state : int, default 0
        Base seed for k-means (training itself is deterministic).

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Cluster assignment of each sample.
    affinity_matrix_ : ndarray of shape (n_samples, n_samples)
        Symmetric non-negative affinity from the deepest coefficients.
    embedding_ : ndarray of shape (n_samples, n_clusters)
        Row-normalized spectral embedding fed to k-means.
    network_ : NetworkModel
        Full trained stack (layer params, per-layer solver states, inputs).
        Note the network stores data as features x samples.
    converged_ : bool
        True when every layer met the solver tolerance.

    Examples
    --------
    >>> from deeplrr import DeepLRR, SynthSpec, generate_subspaces
    >>> X, truth = generate_subspaces(SynthSpec(noise_variance=0.01, seed=7))
    >>> labels = DeepLRR(n_clusters=10).fit_predict(X.T)
    """

    def __init__(self, n_clusters=10, n_layers=3, lambda1=0.1, alpha=1.0,
                 rho=1.0, mu0=1e-6, mu_max=1e6, eta=1.5, eps=1e-7,
                 max_iter=500, kmeans_restarts=20, random_state=0):
        self.n_clusters = n_clusters
        self.n_layers = n_layers
        self.lambda1 = lambda1
        self.alpha = alpha
        self.rho = rho
        self.mu0 = mu0
        self.mu_max = mu_max
        self.eta = eta
        self.eps = eps
        self.max_iter = max_iter
        self.kmeans_restarts = kmeans_restarts
        self.random_state = random_state

    def _config(self):
        return SolverConfig(
            layers=self.n_layers,
            alpha=self.alpha,
            lambda1=self.lambda1,
            rho=self.rho,
            mu0=self.mu0,
            mu_max=self.mu_max,
            eta=self.eta,
            eps=self.eps,
            max_iter=self.max_iter,
            seed=self.random_state if self.random_state is not None else 0,
            clusters=self.n_clusters,
            kmeans_restarts=self.kmeans_restarts,
        ).validate()

    def fit(self, X, y=None):
        """Train the layer stack on X and cluster the samples.

        Parameters
        ----------
        X : array-like of shape (n_samples, n_features)
            Samples as rows, the scikit-learn convention; transposed
            internally to the features x samples layout.
        y : ignored
        """
        X = check_array(X, dtype=np.float64, ensure_min_samples=2,
                        force_all_finite=True)
        if self.n_clusters > X.shape[0]:
            raise ValueError(
                f"n_clusters={self.n_clusters} exceeds n_samples={X.shape[0]}"
            )
        cfg = self._config()
        self.network_ = train_network(X.T, cfg)
        result = ncut_cluster(self.network_.layers[-1].Z, cfg.clusters,
                              cfg.seed, cfg.kmeans_restarts)
        self.labels_ = result.labels
        self.affinity_matrix_ = result.affinity
        self.embedding_ = result.embedding
        self.kmeans_objective_ = result.kmeans_objective
        self.converged_ = self.network_.converged
        self.n_features_in_ = X.shape[1]
        return self

    def salient_features(self):
        """Deepest row-projected features, shape (n_samples, n_features)."""
        check_is_fitted(self, "network_")
        return deep_salient_features(self.network_).T

    def principal_features(self):
        """Deepest column-reconstructed features, (n_samples, n_features)."""
        check_is_fitted(self, "network_")
        return deep_principal_features(self.network_).T

    def reconstruction(self):
        """Reconstructed data after all layers, (n_samples, n_features)."""
        check_is_fitted(self, "network_")
        return deep_reconstruction(self.network_).T
