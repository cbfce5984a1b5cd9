import numpy as np
import pytest
import torch

import iclstorch
from iclstorch.la.Pinv import center_columns, min_eigenvalue, pinv, pinv_solve, symmetrize
from iclstorch.utils import DTYPE, make_generator


def cofactor_solve(A, b):
    N = A.T @ A
    r = A.T @ b
    det = N[0, 0] * N[1, 1] - N[0, 1] * N[1, 0]
    inverse = torch.tensor([[N[1, 1], -N[0, 1]], [-N[1, 0], N[0, 0]]], dtype=DTYPE) / det
    return inverse @ r


def test_pinv_solve_identity():
    x = pinv_solve(torch.eye(2, dtype=DTYPE), [3.0, 4.0])
    assert torch.allclose(x, torch.tensor([3.0, 4.0], dtype=DTYPE), atol=1e-12)


def test_pinv_solve_minimum_norm_rank_one():
    x = pinv_solve([[1.0, 1.0], [1.0, 1.0]], [2.0, 2.0])
    assert torch.allclose(x, torch.tensor([1.0, 1.0], dtype=DTYPE), atol=1e-12)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_pinv_solve_matches_cofactor(seed):
    generator = make_generator(seed)
    A = torch.randn(5, 2, generator=generator, dtype=DTYPE)
    b = torch.randn(5, generator=generator, dtype=DTYPE)
    x = pinv_solve(A, b)
    assert torch.allclose(x, cofactor_solve(A, b), atol=1e-10)
    assert (A.T @ (A @ x - b)).abs().max() <= 1e-8 * (1 + (A.T @ b).abs().max())


def test_pinv_solve_null_space_component():
    generator = make_generator(5)
    basis = torch.randn(6, 2, generator=generator, dtype=DTYPE)
    A = basis @ torch.randn(2, 4, generator=generator, dtype=DTYPE)
    b = torch.randn(6, generator=generator, dtype=DTYPE)
    x = pinv_solve(A, b)
    _, S, Vh = torch.linalg.svd(A)
    null_space = Vh[2:]
    assert (null_space @ x).norm() <= 1e-10


def test_pinv_zero_matrix():
    assert torch.equal(pinv(torch.zeros(3, 2, dtype=DTYPE)), torch.zeros(2, 3, dtype=DTYPE))


def test_pinv_relative_cutoff():
    dropped = pinv(torch.diag(torch.tensor([1.0, 1e-13], dtype=DTYPE)))
    assert torch.allclose(dropped, torch.diag(torch.tensor([1.0, 0.0], dtype=DTYPE)), rtol=0.0, atol=1e-15)
    kept = pinv(torch.diag(torch.tensor([1.0, 1e-11], dtype=DTYPE)))
    assert kept[1, 1].item() == pytest.approx(1e11)
    A = torch.randn(4, 3, generator=make_generator(2), dtype=DTYPE)
    assert torch.allclose(pinv(A), torch.linalg.pinv(A), atol=1e-12)
    assert pinv(torch.zeros(0, 3, dtype=DTYPE)).shape == (3, 0)


def test_pinv_solve_rejects_mismatch_and_nonfinite():
    with pytest.raises(AssertionError):
        pinv_solve(torch.eye(2, dtype=DTYPE), [1.0, 2.0, 3.0])

    with pytest.raises(ValueError):
        pinv_solve([[1.0, float("nan")]], [1.0])


def test_center_columns():
    centered, means = center_columns([[1.0], [2.0], [3.0]])
    assert torch.allclose(centered.flatten(), torch.tensor([-1.0, 0.0, 1.0], dtype=DTYPE))
    assert means.item() == 2.0
    M = torch.randn(7, 3, generator=make_generator(0), dtype=DTYPE)
    once, means = center_columns(M)
    assert once.mean(dim=0).abs().max() <= 1e-12
    twice, _ = center_columns(once, torch.zeros(3, dtype=DTYPE))
    assert torch.equal(once, twice)
    unchanged, zero_means = center_columns(once - once.mean(dim=0))
    assert zero_means.abs().max() <= 1e-12
    with pytest.raises(AssertionError):
        center_columns(M, [0.0, 0.0])


def test_symmetrize_and_min_eigenvalue():
    M = torch.tensor([[2.0, 1.0], [0.0, 2.0]], dtype=DTYPE)
    S = symmetrize(M)
    assert torch.equal(S, S.T)
    assert np.isclose(min_eigenvalue(S), 1.5)


def test_device(device):
    assert iclstorch.get_device() == device
    assert iclstorch.as_tensor([1, 2]).dtype == DTYPE
