import torch

from iclstorch.utils import as_tensor

SVD_RTOL = 1e-12


def pinv(A, rtol=SVD_RTOL):
    """Method to compute the Moore-Penrose pseudo-inverse of a dense matrix.

    Singular values not above rtol * max(singular values) are treated as zero.

    Parameters
    ----------
    A : torch.Tensor
        Matrix of shape (n, m).
    rtol : float
        Relative singular-value cutoff.

    Returns
    -------
    torch.Tensor
        Pseudo-inverse of shape (m, n).
    """
    A = as_tensor(A, "A", ndim=2)
    if A.numel() == 0:
        return A.new_zeros((A.shape[1], A.shape[0]))

    return torch.linalg.pinv(A, rtol=rtol)


def pinv_solve(A, b, rtol=SVD_RTOL):
    """Method to compute the minimum-norm least-squares solution of A x = b.

    Parameters
    ----------
    A : torch.Tensor
        Matrix of shape (n, m).
    b : torch.Tensor
        Vector of length n, or matrix of shape (n, k) for several right-hand sides.
    rtol : float
        Relative singular-value cutoff.

    Returns
    -------
    torch.Tensor
        Solution of length m (or shape (m, k)).
    """
    A = as_tensor(A, "A", ndim=2)
    b = as_tensor(b, "b")
    assert b.dim() in (1, 2), "b must be a vector or a matrix."
    assert b.shape[0] == A.shape[0], "A has %d rows but b has %d entries." % (
        A.shape[0],
        b.shape[0],
    )
    return pinv(A, rtol=rtol) @ b


def center_columns(M, means=None):
    """Method to center the columns of a matrix.

    Parameters
    ----------
    M : torch.Tensor
        Matrix of shape (n, d), n >= 1.
    means : torch.Tensor
        Column means to subtract. If None, the column means of M are computed and used.

    Returns
    -------
    (torch.Tensor, torch.Tensor)
        Centered matrix and the subtracted means.
    """
    M = as_tensor(M, "M", ndim=2)
    assert M.shape[0] >= 1, "M must be non-empty."
    if means is None:
        means = M.mean(dim=0)
    else:
        means = as_tensor(means, "means", ndim=1)
        assert means.shape[0] == M.shape[1], "means has length %d but M has %d columns." % (
            means.shape[0],
            M.shape[1],
        )

    return M - means, means


def symmetrize(M):
    """Method to return the exactly symmetric part (M + M^T) / 2 of a square matrix."""
    assert M.dim() == 2 and M.shape[0] == M.shape[1], "M must be square."
    return (M + M.T) / 2


def min_eigenvalue(M):
    """Method to determine the smallest eigenvalue of a symmetric matrix.

    Parameters
    ----------
    M : torch.Tensor
        Symmetric matrix.

    Returns
    -------
    float
        Smallest eigenvalue.
    """
    M = as_tensor(M, "M", ndim=2)
    return torch.linalg.eigvalsh(symmetrize(M))[0].item()
