import torch

from iclstorch.la.Pinv import center_columns, pinv_solve
from iclstorch.ls.LinearModel import LabeledSet, LinearModel
from iclstorch.utils import as_tensor


def fit_usm(labeled, X_u):
    """Method to fit the updated second moment (USM) least squares classifier.

    The labeled second moment matrix X^T X is replaced by the scaled all-data
    second moment L / (L + U) X_e^T X_e. Features are centered by the combined
    labeled and unlabeled means and labels by their mean, so predictions do not
    depend on the label encoding; the mean label is kept as the score offset.

    Parameters
    ----------
    labeled : iclstorch.ls.LabeledSet
        Labeled data.
    X_u : torch.Tensor
        Unlabeled features of shape (U, d), U >= 0.

    Returns
    -------
    iclstorch.ls.LinearModel
        Centered model scoring (x - means)^T beta + mean label.
    """
    assert isinstance(labeled, LabeledSet), "labeled must be a LabeledSet."
    X_u = as_tensor(X_u, "X_u", ndim=2)
    assert X_u.shape[1] == labeled.d, "X_u must have %d columns." % labeled.d
    L, U = labeled.L, X_u.shape[0]
    X_e, means = center_columns(torch.cat([labeled.X, X_u]))
    X = X_e[:L]
    y_mean = labeled.y.mean()
    second_moment = (L / (L + U)) * (X_e.T @ X_e)
    beta = pinv_solve(second_moment, X.T @ (labeled.y - y_mean))
    return LinearModel(
        beta, has_intercept=False, label_offset=y_mean.item(), feature_means=means
    )
