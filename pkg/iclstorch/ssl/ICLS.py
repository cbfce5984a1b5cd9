from typing import NamedTuple

import torch

from iclstorch.ls.LeastSquares import fit_ls, fit_ls_arrays, risk_hat
from iclstorch.ls.LinearModel import LabeledSet, LinearModel
from iclstorch.utils import as_tensor

from .BoxQP import PG_TOL, Solver, build_constraint_problem, solve_box_qp


class IclsFit(NamedTuple):
    """Result of an implicitly constrained least squares fit.

    model is the least squares fit on the labeled data extended with (X_u, y_u_star);
    objective is its empirical risk on the labeled data.
    """

    model: LinearModel
    y_u_star: torch.Tensor
    objective: float
    solver_iterations: int
    converged: bool


def beta_from_labeling(labeled, X_u, y_u, intercept=True):
    """Method to compute the least squares coefficients induced by a soft labeling of X_u.

    Every result is an element of the constraint set C_beta when y_u lies in [0, 1]^U.

    Parameters
    ----------
    labeled : iclstorch.ls.LabeledSet
        Labeled data.
    X_u : torch.Tensor
        Unlabeled features of shape (U, d).
    y_u : torch.Tensor
        Soft labels of length U.
    intercept : bool
        Fit an intercept (True).

    Returns
    -------
    iclstorch.ls.LinearModel
        Least squares fit on the extended data.
    """
    X_e, y_e = labeled.extend(X_u, y_u)
    return fit_ls_arrays(X_e, y_e, intercept=intercept)


def fit_icls(
    labeled,
    X_u,
    intercept=True,
    solver=Solver.ProjectedGradient,
    tol=PG_TOL,
    max_iterations=None,
    verbose=False,
):
    """Method to fit the implicitly constrained least squares (ICLS) classifier.

    The labeled squared loss is minimized over the coefficients reachable by some
    soft labeling y_u in [0, 1]^U of the unlabeled objects. The labeling is found by
    solving the box-constrained QP from build_constraint_problem, starting at the box
    center, and the classifier is refitted on the labeled and imputed objects.

    Parameters
    ----------
    labeled : iclstorch.ls.LabeledSet
        Labeled data.
    X_u : torch.Tensor
        Unlabeled features of shape (U, d). If U is 0, the supervised fit is returned.
    intercept : bool
        Fit an intercept (True).
    solver : iclstorch.ssl.Solver
        Box QP solver.
    tol : float
        Projected-gradient convergence threshold.
    max_iterations : int
        Solver iteration cap. If None, max(2000, 20 U).
    verbose : bool
        Warn on non-convergence (True).

    Returns
    -------
    iclstorch.ssl.IclsFit
        Fitted classifier and the minimizing soft labeling.
    """
    assert isinstance(labeled, LabeledSet), "labeled must be a LabeledSet."
    X_u = as_tensor(X_u, "X_u", ndim=2)
    assert X_u.shape[1] == labeled.d, "X_u must have %d columns." % labeled.d
    if X_u.shape[0] == 0:
        model = fit_ls(labeled, intercept=intercept)
        return IclsFit(model, X_u.new_zeros(0), risk_hat(model, labeled), 0, True)

    qp = build_constraint_problem(labeled, X_u, intercept=intercept)
    y_u_star, qp_objective, iterations, converged = solve_box_qp(
        qp,
        y0=X_u.new_full((X_u.shape[0],), 0.5),
        solver=solver,
        tol=tol,
        max_iterations=max_iterations,
        verbose=verbose,
    )
    model = beta_from_labeling(labeled, X_u, y_u_star, intercept=intercept)
    return IclsFit(model, y_u_star, qp_objective + qp.constant, iterations, converged)
