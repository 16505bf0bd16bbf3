"""Single-layer solver: inexact augmented Lagrangian with closed-form updates.

One layer decomposes its input A (features x samples) as

    A = A Z + P A + E

minimizing  0.5*(||Z||_F^2 + ||P||_F^2) + 0.5*alpha*||P A - P A Z||_F^2
            + lambda_l*||E||_1

Z and P have closed-form ridge solutions (symmetric positive-definite
solves; the system matrices are identity-plus-PSD so Cholesky always
applies), E is an element-wise soft threshold, and the multiplier/penalty
follow the standard inexact-ALM schedule.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from threadpoolctl import threadpool_limits


class NumericalError(RuntimeError):
    """Solver iterates became non-finite."""


@dataclass
class LayerParams:
    """One layer's learned triple: coefficients, projection, sparse error."""

    Z: np.ndarray  # N x N
    P: np.ndarray  # n x n
    E: np.ndarray  # n x N


@dataclass
class AlmState:
    """Final multiplier/penalty plus per-iteration diagnostics."""

    Y: np.ndarray
    mu: float
    iterations: int
    residual_history: np.ndarray
    objective_history: np.ndarray
    mu_history: np.ndarray
    converged: bool


def shrink(x, threshold):
    """Soft threshold sgn(x) * max(|x| - threshold, 0), element-wise.

    Exact minimizer of threshold*|e| + 0.5*(e - x)^2.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.maximum(np.abs(x) - threshold, 0.0)


def update_z(A, P, E, Y, mu, alpha):
    """Minimize the layer Lagrangian over the coefficient matrix Z.

    Z = (I + alpha*(PA)^T(PA) + mu*A^T A)^-1 (alpha*(PA)^T(PA) + mu*A^T Xi + A^T Y)
    with Xi = A - PA - E; solved as an SPD system, never an explicit inverse.
    """
    PA = P @ A
    Xi = A - PA - E
    gram = PA.T @ PA
    lhs = np.eye(A.shape[1]) + alpha * gram + mu * (A.T @ A)
    rhs = alpha * gram + mu * (A.T @ Xi) + A.T @ Y
    return _spd_solve(lhs, rhs)


def update_p(A, Z, E, Y, mu, alpha):
    """Minimize the layer Lagrangian over the projection matrix P.

    P = (Y A^T + mu*(Phi - E) A^T)(I + alpha*Phi Phi^T + mu*A A^T)^-1
    with Phi = A - A Z; the right factor is SPD, solved on the transpose.
    """
    Phi = A - A @ Z
    lhs = np.eye(A.shape[0]) + alpha * (Phi @ Phi.T) + mu * (A @ A.T)
    rhs = Y @ A.T + mu * ((Phi - E) @ A.T)
    return _spd_solve(lhs, rhs.T).T


def update_e(A, Z, P, Y, mu, lambda_l):
    """Soft-threshold the error: shrink(A - AZ - PA + Y/mu, lambda_l/mu)."""
    sigma = A - A @ Z - P @ A + Y / mu
    return shrink(sigma, lambda_l / mu)


def constraint_residual(A, Z, P, E):
    return A - A @ Z - P @ A - E


def update_multiplier(Y, mu, A, Z, P, E):
    """Ascent step Y + mu * (A - AZ - PA - E), using the pre-growth mu."""
    return Y + mu * constraint_residual(A, Z, P, E)


def layer_objective(A, Z, P, E, alpha, lambda_l):
    """Value of the layer objective (l1 norm on E) at the given iterate."""
    PA = P @ A
    misfit = PA - PA @ Z
    return float(
        0.5 * (np.sum(Z * Z) + np.sum(P * P))
        + 0.5 * alpha * np.sum(misfit * misfit)
        + lambda_l * np.sum(np.abs(E))
    )


def _spd_solve(lhs, rhs):
    try:
        return scipy.linalg.solve(lhs, rhs, assume_a="pos")
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"SPD solve failed: {exc}") from exc


def solve_layer(A, cfg, lambda_l, alpha):
    """Run the inexact-ALM loop on one layer input until the infinity-norm
    residual drops to cfg.eps or cfg.max_iter is reached.

    Parameters
    ----------
    A : ndarray, shape (n, N)
        Layer input, finite.
    cfg : SolverConfig
        Supplies mu0, mu_max, eta, eps, max_iter.
    lambda_l : float
        Sparsity weight for this layer, > 0.
    alpha : float
        Neighborhood reconstruction weight, >= 0.

    Returns
    -------
    (LayerParams, AlmState)
        Final iterate and solver state; ``state.converged`` is False when
        max_iter ran out. Fully deterministic: no randomness anywhere.
    """
    if lambda_l <= 0:
        raise ValueError("lambda_l must be > 0")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    A = np.ascontiguousarray(A, dtype=np.float64)
    n, N = A.shape
    Z = np.zeros((N, N))
    P = np.zeros((n, n))
    E = np.zeros((n, N))
    Y = np.zeros((n, N))
    mu = cfg.mu0
    residuals, objectives, mus = [], [], []
    converged = False
    # single BLAS thread: bit-reproducible iterates regardless of host cores
    with threadpool_limits(limits=1):
        for _ in range(cfg.max_iter):
            mus.append(mu)
            Z = update_z(A, P, E, Y, mu, alpha)
            P = update_p(A, Z, E, Y, mu, alpha)
            E = update_e(A, Z, P, Y, mu, lambda_l)
            R = constraint_residual(A, Z, P, E)
            Y = Y + mu * R
            mu = min(cfg.eta * mu, cfg.mu_max)
            res = float(np.max(np.abs(R)))
            if not np.isfinite(res):
                raise NumericalError(
                    f"non-finite iterate at iteration {len(residuals) + 1}"
                )
            residuals.append(res)
            objectives.append(layer_objective(A, Z, P, E, alpha, lambda_l))
            if res <= cfg.eps:
                converged = True
                break
    state = AlmState(
        Y=Y,
        mu=mu,
        iterations=len(residuals),
        residual_history=np.array(residuals),
        objective_history=np.array(objectives),
        mu_history=np.array(mus),
        converged=converged,
    )
    return LayerParams(Z=Z, P=P, E=E), state
