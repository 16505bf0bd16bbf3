"""Matrix norms via the Gram spectrum.

Singular values come from a symmetric eigendecomposition of the smaller Gram
matrix (A A^T or A^T A), not a full SVD; the training path never needs
singular values, these are for diagnostics and verification.
"""

from typing import NamedTuple

import numpy as np

from .matrixio import as_data_matrix


class MatrixNorms(NamedTuple):
    operator: float
    frobenius: float
    nuclear: float
    rank: int


def singular_values(m):
    """Singular values in descending order, clipped at zero."""
    a = as_data_matrix(m)
    gram = a @ a.T if a.shape[0] <= a.shape[1] else a.T @ a
    eigs = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(eigs, 0.0, None))[::-1]


def numerical_rank(sv, shape):
    """Count of singular values above max(shape) * eps * sigma_max."""
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    cutoff = max(shape) * np.finfo(np.float64).eps * sv[0]
    return int(np.count_nonzero(sv > cutoff))


def matrix_norms(m):
    """Operator norm, Frobenius norm, nuclear norm, and numerical rank."""
    a = as_data_matrix(m)
    sv = singular_values(a)
    return MatrixNorms(
        operator=float(sv[0]),
        frobenius=float(np.sqrt(np.sum(sv * sv))),
        nuclear=float(np.sum(sv)),
        rank=numerical_rank(sv, a.shape),
    )
