import warnings
from typing import NamedTuple

import torch

from iclstorch.ls.LeastSquares import classify, fit_ls, fit_ls_arrays
from iclstorch.ls.LinearModel import LabeledSet, LinearModel
from iclstorch.utils import as_tensor

SELF_LEARNING_MAX_ITERATIONS = 100


class SelfLearnFit(NamedTuple):
    """Result of self-learning.

    imputed holds the hard labels the final model was fitted on; when converged they
    equal classify(model, X_u).
    """

    model: LinearModel
    imputed: torch.Tensor
    iterations: int
    converged: bool


def fit_self_learning(
    labeled,
    X_u,
    intercept=True,
    max_iterations=SELF_LEARNING_MAX_ITERATIONS,
    verbose=False,
):
    """Method to fit the self-learning least squares classifier.

    Starting from the supervised fit, hard labels are imputed on all unlabeled
    objects and the classifier is refitted on the labeled and imputed objects, until
    the imputed label vector repeats. A repeat of the immediately preceding vector is
    a fixed point (converged); a repeat of an older vector is a cycle.

    Parameters
    ----------
    labeled : iclstorch.ls.LabeledSet
        Labeled data.
    X_u : torch.Tensor
        Unlabeled features of shape (U, d).
    intercept : bool
        Fit an intercept (True).
    max_iterations : int
        Maximum number of refits.
    verbose : bool
        Warn on cycles and when max_iterations is reached (True).

    Returns
    -------
    iclstorch.ssl.SelfLearnFit
        Final model, imputed labels, number of refits and convergence flag.
    """
    assert isinstance(labeled, LabeledSet), "labeled must be a LabeledSet."
    assert (
        type(max_iterations) == int and max_iterations >= 0
    ), "max_iterations must be of type int and >= 0."
    X_u = as_tensor(X_u, "X_u", ndim=2)
    assert X_u.shape[1] == labeled.d, "X_u must have %d columns." % labeled.d
    model = fit_ls(labeled, intercept=intercept)
    if X_u.shape[0] == 0:
        return SelfLearnFit(model, X_u.new_zeros(0), 0, True)

    X_e = torch.cat([labeled.X, X_u])
    imputed = classify(model, X_u)
    if max_iterations == 0:
        return SelfLearnFit(model, imputed, 0, False)

    seen = {tuple(imputed.tolist())}
    for iteration in range(1, max_iterations + 1):
        fitted_on = imputed
        model = fit_ls_arrays(X_e, torch.cat([labeled.y, fitted_on]), intercept=intercept)
        imputed = classify(model, X_u)
        if torch.equal(imputed, fitted_on):
            return SelfLearnFit(model, fitted_on, iteration, True)

        key = tuple(imputed.tolist())
        if key in seen:
            if verbose:
                warnings.warn("Self-learning entered a label cycle after %d refits." % iteration)

            return SelfLearnFit(model, fitted_on, iteration, False)

        seen.add(key)

    if verbose:
        warnings.warn("Self-learning stopped after %d refits without converging." % max_iterations)

    return SelfLearnFit(model, fitted_on, max_iterations, False)
