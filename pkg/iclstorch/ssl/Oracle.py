from iclstorch.ls.LeastSquares import fit_ls_arrays
from iclstorch.ls.LinearModel import LabeledSet
from iclstorch.utils import as_tensor


def fit_oracle(labeled, X_u, y_u_true, intercept=True):
    """Method to fit the oracle: the least squares classifier trained as if every unlabeled object were labeled.

    Parameters
    ----------
    labeled : iclstorch.ls.LabeledSet
        Labeled data.
    X_u : torch.Tensor
        Unlabeled features of shape (U, d).
    y_u_true : torch.Tensor
        True labels of the unlabeled objects, entries in {0, 1}.
    intercept : bool
        Fit an intercept (True).

    Returns
    -------
    iclstorch.ls.LinearModel
        Least squares fit on all objects.
    """
    assert isinstance(labeled, LabeledSet), "labeled must be a LabeledSet."
    y_u_true = as_tensor(y_u_true, "y_u_true", ndim=1)
    assert bool(((y_u_true == 0) | (y_u_true == 1)).all()), "y_u_true entries must be in {0, 1}."
    X_e, y_e = labeled.extend(X_u, y_u_true)
    return fit_ls_arrays(X_e, y_e, intercept=intercept)
