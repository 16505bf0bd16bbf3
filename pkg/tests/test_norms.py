import numpy as np
import pytest

from deeplrr import matrix_norms, singular_values


def chain_holds(norms, slack=1e-9):
    op, fro, nuc, rank = norms
    r = max(rank, 1)
    pad = lambda x: x * (1 + slack) + 1e-300
    return (op <= pad(fro) and fro <= pad(nuc)
            and nuc <= pad(np.sqrt(r) * fro)
            and np.sqrt(r) * fro <= pad(r * op))


def test_identity():
    op, fro, nuc, rank = matrix_norms(np.eye(3))
    assert op == pytest.approx(1.0, abs=1e-12)
    assert fro == pytest.approx(np.sqrt(3.0), rel=1e-12)
    assert nuc == pytest.approx(3.0, rel=1e-12)
    assert rank == 3


def test_zero_matrix():
    assert matrix_norms(np.zeros((4, 3))) == (0.0, 0.0, 0.0, 0)


def test_singular_values_match_svd_oracle():
    rng = np.random.default_rng(0)
    for _ in range(30):
        n, N = rng.integers(2, 15, 2)
        a = rng.standard_normal((n, N))
        sv = singular_values(a)
        oracle = np.linalg.svd(a, compute_uv=False)
        assert sv.shape == oracle.shape
        assert np.max(np.abs(sv - oracle)) <= 1e-8 * oracle[0]


def test_norm_chain_random_gaussian():
    rng = np.random.default_rng(1)
    norms = matrix_norms(rng.standard_normal((10, 8)))
    assert chain_holds(norms)


def test_norm_chain_varied_shapes():
    rng = np.random.default_rng(2)
    for _ in range(200):
        n, N = rng.integers(1, 25, 2)
        r = int(rng.integers(1, min(n, N) + 1))
        a = rng.standard_normal((n, r)) @ rng.standard_normal((r, N))
        assert chain_holds(matrix_norms(a))


def test_rank_of_low_rank_product():
    rng = np.random.default_rng(3)
    for r in (1, 2, 5, 8):
        u = rng.standard_normal((20, r))
        v = rng.standard_normal((12, r))
        assert matrix_norms(u @ v.T).rank == r


def test_rejects_nonfinite():
    from deeplrr import NonFiniteError
    with pytest.raises(NonFiniteError):
        matrix_norms(np.array([[np.inf, 1.0]]))
