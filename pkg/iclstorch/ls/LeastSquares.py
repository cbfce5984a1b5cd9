import torch

from iclstorch.la.Pinv import pinv_solve
from iclstorch.utils import as_tensor

from .LinearModel import LabeledSet, LinearModel

THRESHOLD = 0.5


def design_matrix(X, intercept=True):
    """Method to build the design matrix, prepending a constant-1 column if intercept is True.

    Parameters
    ----------
    X : torch.Tensor
        Raw feature matrix of shape (n, d).
    intercept : bool
        Prepend a constant feature (True).

    Returns
    -------
    torch.Tensor
        Design matrix of shape (n, d + 1) or (n, d).
    """
    X = as_tensor(X, "X", ndim=2)
    if intercept:
        return torch.cat([X.new_ones((X.shape[0], 1)), X], dim=1)

    return X


def fit_ls_arrays(X, y, intercept=True):
    """Method to fit a least squares classifier directly from features and real-valued targets.

    Parameters
    ----------
    X : torch.Tensor
        Raw feature matrix of shape (n, d).
    y : torch.Tensor
        Targets of length n.
    intercept : bool
        Fit an intercept (True).

    Returns
    -------
    iclstorch.ls.LinearModel
        Fitted model.
    """
    X = as_tensor(X, "X", ndim=2)
    y = as_tensor(y, "y", ndim=1)
    if X.shape[0] < 1:
        raise ValueError("Cannot fit a least squares classifier to empty data.")

    beta = pinv_solve(design_matrix(X, intercept), y)
    return LinearModel(beta, has_intercept=intercept)


def fit_ls(data, intercept=True):
    """Method to fit the supervised least squares classifier (closed form, pseudo-inverse).

    Parameters
    ----------
    data : iclstorch.ls.LabeledSet
        Labeled data.
    intercept : bool
        Fit an intercept (True).

    Returns
    -------
    iclstorch.ls.LinearModel
        Fitted model.
    """
    assert isinstance(data, LabeledSet), "data must be a LabeledSet."
    return fit_ls_arrays(data.X, data.y, intercept=intercept)


def scores(model, X):
    """Method to compute the real-valued scores of a linear model.

    Parameters
    ----------
    model : iclstorch.ls.LinearModel
        Fitted model.
    X : torch.Tensor
        Raw feature matrix of shape (n, d).

    Returns
    -------
    torch.Tensor
        Scores of length n.
    """
    X = as_tensor(X, "X", ndim=2)
    assert X.shape[1] == model.n_features, "X has %d features but the model expects %d." % (
        X.shape[1],
        model.n_features,
    )
    if model.centered:
        return (X - model.feature_means) @ model.beta + model.label_offset

    return design_matrix(X, model.has_intercept) @ model.beta + model.label_offset


def classify(model, X):
    """Method to classify objects by thresholding scores at 0.5 (ties go to class 1).

    Parameters
    ----------
    model : iclstorch.ls.LinearModel
        Fitted model.
    X : torch.Tensor
        Raw feature matrix of shape (n, d).

    Returns
    -------
    torch.Tensor
        Predicted labels in {0, 1} (float64).
    """
    return (scores(model, X) >= THRESHOLD).to(model.beta.dtype)


def risk_hat(model, data):
    """Method to compute the empirical squared-loss risk (1/L) ||scores - y||^2.

    Parameters
    ----------
    model : iclstorch.ls.LinearModel
        Fitted model.
    data : iclstorch.ls.LabeledSet
        Labeled data to evaluate on.

    Returns
    -------
    float
        Empirical risk.
    """
    residual = scores(model, data.X) - data.y
    return (residual @ residual).item() / data.L
