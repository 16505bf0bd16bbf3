"""Synthetic multi-subspace benchmark and corruption models.

Builds a union of independent low-dimensional subspaces: a random column-
orthonormal basis, rotated by one fixed random rotation per subspace step,
each sampled with i.i.d. Gaussian coefficients. Corruptions are entry-wise
Gaussian noise on the 0-255 gray scale or uniform pixel replacement.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SynthSpec:
    """Shape and noise of the generated dataset (defaults: 200x90, 10
    subspaces of dimension 10 with 9 samples each)."""

    ambient_dim: int = 200
    subspace_dim: int = 10
    n_subspaces: int = 10
    samples_per_subspace: int = 9
    noise_variance: float = 0.1
    seed: int = 0

    def validate(self):
        if min(self.ambient_dim, self.subspace_dim, self.n_subspaces,
               self.samples_per_subspace) < 1:
            raise ValueError("all counts must be positive")
        if self.subspace_dim > self.ambient_dim:
            raise ValueError("subspace_dim cannot exceed ambient_dim")
        if self.noise_variance < 0:
            raise ValueError("noise_variance must be >= 0")
        return self


@dataclass(frozen=True)
class CorruptionSpec:
    """One corruption model: kind is "gaussian" (variance on the 0-255
    scale) or "pixel" (fraction replaced by uniform [0,1] values)."""

    kind: str
    gaussian_variance: float = 0.0
    pixel_fraction: float = 0.0
    seed: int = 0

    def apply(self, X, clip=False):
        rng = np.random.default_rng(self.seed)
        if self.kind == "gaussian":
            return add_gaussian_noise(X, self.gaussian_variance, rng, clip=clip)
        if self.kind == "pixel":
            return corrupt_pixels(X, self.pixel_fraction, rng)
        raise ValueError(f"unknown corruption kind {self.kind!r}")


def random_orthonormal_basis(ambient, dim, rng):
    """Orthonormal columns from QR of a Gaussian matrix, signs fixed so the
    triangular factor has a positive diagonal (reproducible across runs)."""
    if dim > ambient:
        raise ValueError(f"dim={dim} exceeds ambient={ambient}")
    q, r = np.linalg.qr(rng.standard_normal((ambient, dim)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def random_rotation(dim, rng):
    """Random rotation: orthogonal with determinant +1."""
    q = random_orthonormal_basis(dim, dim, rng)
    if np.linalg.det(q) < 0:
        q[:, -1] = -q[:, -1]
    return q


def generate_subspaces(spec):
    """Sample the multi-subspace dataset.

    Returns
    -------
    (X, labels)
        X is ambient_dim x (n_subspaces * samples_per_subspace) with
        columns grouped by subspace; labels give the subspace index of
        each column. Entry-wise Gaussian noise of the configured variance
        is added at the end. Bit-reproducible for a fixed spec.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    basis = random_orthonormal_basis(spec.ambient_dim, spec.subspace_dim, rng)
    rotation = random_rotation(spec.ambient_dim, rng)
    blocks = []
    for _ in range(spec.n_subspaces):
        coeff = rng.standard_normal((spec.subspace_dim, spec.samples_per_subspace))
        blocks.append(basis @ coeff)
        basis = rotation @ basis
    X = np.hstack(blocks)
    if spec.noise_variance > 0:
        X = X + rng.normal(0.0, np.sqrt(spec.noise_variance), X.shape)
    labels = np.repeat(np.arange(spec.n_subspaces), spec.samples_per_subspace)
    return X, labels


def add_gaussian_noise(X, variance, rng, clip=False):
    """Add i.i.d. Gaussian noise with variance given on the 0-255 gray scale
    (standard deviation sqrt(variance)/255 on [0,1]-normalized data); pass
    clip=True for image data to clamp the result back into [0,1]."""
    if variance < 0:
        raise ValueError("variance must be >= 0")
    X = np.asarray(X, dtype=np.float64)
    if variance == 0:
        return X.copy()
    noisy = X + rng.normal(0.0, np.sqrt(variance) / 255.0, X.shape)
    return np.clip(noisy, 0.0, 1.0) if clip else noisy


def corrupt_pixels(X, fraction, rng):
    """Replace exactly floor(fraction * size) entries, chosen uniformly
    without replacement, with i.i.d. uniform [0,1] values."""
    if not 0 <= fraction <= 1:
        raise ValueError("fraction must be in [0, 1]")
    X = np.asarray(X, dtype=np.float64).copy()
    count = int(np.floor(fraction * X.size))
    if count == 0:
        return X
    flat = rng.choice(X.size, size=count, replace=False)
    X.flat[flat] = rng.uniform(0.0, 1.0, size=count)
    return X


def block_diagonal_score(W, truth):
    """Fraction of affinity mass inside ground-truth blocks, in [0, 1];
    0 when the total mass is 0."""
    W = np.asarray(W, dtype=np.float64)
    truth = np.asarray(truth).ravel()
    if W.shape[0] != W.shape[1] or W.shape[0] != truth.size:
        raise ValueError(f"shape mismatch: W {W.shape}, truth {truth.shape}")
    total = W.sum()
    if total == 0:
        return 0.0
    same = truth[:, None] == truth[None, :]
    return float(W[same].sum() / total)
