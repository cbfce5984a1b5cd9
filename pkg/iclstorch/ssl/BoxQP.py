import warnings
from enum import Enum, auto, unique
from typing import NamedTuple

import torch
from scipy.optimize import minimize

from iclstorch.la.Pinv import pinv, symmetrize
from iclstorch.ls.LeastSquares import design_matrix
from iclstorch.ls.LinearModel import LabeledSet
from iclstorch.utils import as_tensor

PG_TOL = 1e-8
ARMIJO = 1e-4
MAX_HALVINGS = 60
MIN_STEP = 1e-12
MAX_STEP = 1e12


@unique
class Solver(Enum):
    """Box-constrained QP solver enumeration."""

    ProjectedGradient = auto()
    LBFGSB = auto()


class BoxQP:
    """Class used to represent min 1/2 y^T Q y + c^T y subject to lower <= y <= upper.

    Parameters
    ----------
    Q : torch.Tensor
        Symmetric positive semi-definite matrix of shape (U, U).
    c : torch.Tensor
        Linear term of length U.
    constant : float
        Objective offset; objective(y) + constant is the labeled empirical risk for ICLS problems.
    beta_offset : torch.Tensor
        Coefficients induced by y_u = 0 (ICLS problems only).
    beta_map : torch.Tensor
        Linear map from y_u to the change in coefficients (ICLS problems only).
    """

    lower = 0.0
    upper = 1.0

    def __init__(self, Q, c, constant=0.0, beta_offset=None, beta_map=None):
        Q = as_tensor(Q, "Q", ndim=2)
        c = as_tensor(c, "c", ndim=1)
        assert Q.shape[0] == Q.shape[1], "Q must be square."
        assert Q.shape[0] == c.shape[0], "Q and c dimensions differ."
        if c.shape[0] < 1:
            raise ValueError("A box QP requires at least one variable.")

        assert bool(
            torch.allclose(Q, Q.T, rtol=0.0, atol=1e-10)
        ), "Q must be symmetric."
        self.Q = Q
        self.c = c
        self.constant = float(constant)
        self.beta_offset = beta_offset
        self.beta_map = beta_map

    @property
    def U(self):
        return self.c.shape[0]

    def objective(self, y):
        """Method to evaluate 1/2 y^T Q y + c^T y."""
        y = as_tensor(y, "y", ndim=1)
        return (0.5 * (y @ (self.Q @ y)) + self.c @ y).item()

    def gradient(self, y):
        """Method to evaluate the gradient Q y + c."""
        y = as_tensor(y, "y", ndim=1)
        return self.Q @ y + self.c

    def project(self, y):
        return torch.clamp(y, self.lower, self.upper)

    def projected_gradient(self, y, g=None):
        """Method to compute the projected gradient y - P(y - grad), zero exactly at a box-constrained minimum."""
        if g is None:
            g = self.gradient(y)

        return y - self.project(y - g)

    def beta(self, y_u):
        """Method to map a soft labeling to the induced coefficients (ICLS problems only)."""
        assert self.beta_map is not None, "This BoxQP was not built from labeled data."
        return self.beta_offset + self.beta_map @ as_tensor(y_u, "y_u", ndim=1)

    def __repr__(self):
        return "BoxQP(U=%d)" % self.U


class QPSolution(NamedTuple):
    y: torch.Tensor
    objective: float
    iterations: int
    converged: bool


def build_constraint_problem(labeled, X_u, intercept=True):
    """Method to assemble the box-constrained QP over soft labelings of the unlabeled data.

    With X and X_u the (optionally intercept-augmented) labeled and unlabeled design
    matrices, X_e their row concatenation and M = (X_e^T X_e)^+:

        Q = (2/L) X_u M X^T X M X_u^T
        c = (2/L) [X_u M X^T X M X^T y - X_u M X^T y]

    M X_e^T is realized as the SVD pseudo-inverse of X_e, which also gives the
    coefficients induced by any labeling: beta(y_u) = X_e^+ [y; y_u].

    Parameters
    ----------
    labeled : iclstorch.ls.LabeledSet
        Labeled data.
    X_u : torch.Tensor
        Unlabeled features of shape (U, d), U >= 1.
    intercept : bool
        Include a constant feature (True).

    Returns
    -------
    iclstorch.ssl.BoxQP
        The quadratic program, with constant equal to the labeled risk at y_u = 0.
    """
    assert isinstance(labeled, LabeledSet), "labeled must be a LabeledSet."
    X_u = as_tensor(X_u, "X_u", ndim=2)
    assert X_u.shape[1] == labeled.d, "X_u must have %d columns." % labeled.d
    if X_u.shape[0] < 1:
        raise ValueError("At least one unlabeled object is required.")

    L = labeled.L
    X = design_matrix(labeled.X, intercept)
    X_e = torch.cat([X, design_matrix(X_u, intercept)])
    X_e_pinv = pinv(X_e)
    beta_map = X_e_pinv[:, L:]
    beta_offset = X_e_pinv[:, :L] @ labeled.y
    G = X @ beta_map
    residual = X @ beta_offset - labeled.y
    Q = symmetrize((2.0 / L) * (G.T @ G))
    c = (2.0 / L) * (G.T @ residual)
    return BoxQP(
        Q,
        c,
        constant=(residual @ residual).item() / L,
        beta_offset=beta_offset,
        beta_map=beta_map,
    )


def _projected_gradient_descent(qp, y, tol, max_iterations):
    Q, c = qp.Q, qp.c
    g = Q @ y + c
    f = (0.5 * (y @ (g + c))).item()
    step = 1.0 / max(Q.abs().sum(dim=1).max().item(), MIN_STEP)
    for iteration in range(max_iterations):
        if qp.projected_gradient(y, g).abs().max().item() <= tol:
            return y, f, iteration, True

        d = qp.project(y - step * g) - y
        gd = (g @ d).item()
        if gd >= 0:
            break

        dQd = (d @ (Q @ d)).item()
        t = 1.0
        for _ in range(MAX_HALVINGS):
            if t * gd + 0.5 * t * t * dQd <= ARMIJO * t * gd:
                break

            t *= 0.5

        y = qp.project(y + t * d)
        g = Q @ y + c
        f = (0.5 * (y @ (g + c))).item()
        if dQd > 0:
            step = min(max((d @ d).item() / dQd, MIN_STEP), MAX_STEP)
        else:
            step = MAX_STEP
    else:
        iteration = max_iterations

    converged = qp.projected_gradient(y, g).abs().max().item() <= tol
    return y, f, iteration, converged


def solve_box_qp(
    qp,
    y0=None,
    solver=Solver.ProjectedGradient,
    tol=PG_TOL,
    max_iterations=None,
    verbose=False,
):
    """Method to minimize 1/2 y^T Q y + c^T y over the box [0, 1]^U.

    The baseline solver is projected gradient descent with Barzilai-Borwein step
    lengths and an Armijo backtracking line search along the projected direction.
    Solver.LBFGSB first runs scipy's L-BFGS-B with the analytic gradient and then
    polishes with projected gradient descent so both share one stopping rule.

    Parameters
    ----------
    qp : iclstorch.ssl.BoxQP
        Problem to solve.
    y0 : torch.Tensor
        Starting point. If None, the box center 0.5 is used.
    solver : iclstorch.ssl.Solver
        Solver to use.
    tol : float
        Convergence threshold on the infinity norm of the projected gradient.
    max_iterations : int
        Iteration cap. If None, max(2000, 20 U).
    verbose : bool
        Warn when the iteration cap is reached (True).

    Returns
    -------
    iclstorch.ssl.QPSolution
        (y, objective, iterations, converged). Reaching the cap returns the last
        (and best, the descent is monotone) iterate with converged=False.
    """
    assert isinstance(qp, BoxQP), "qp must be a BoxQP."
    assert solver in Solver, "solver must be a Solver Enum."
    if max_iterations is None:
        max_iterations = max(2000, 20 * qp.U)

    if y0 is None:
        y = qp.c.new_full((qp.U,), 0.5)
    else:
        y = as_tensor(y0, "y0", ndim=1)
        assert y.shape[0] == qp.U, "y0 must have length %d." % qp.U
        y = qp.project(y)

    iterations = 0
    if solver == Solver.LBFGSB:
        Q = qp.Q.cpu().numpy()
        c = qp.c.cpu().numpy()

        def fun(x):
            Qx = Q @ x
            return 0.5 * x @ Qx + c @ x, Qx + c

        result = minimize(
            fun,
            y.cpu().numpy(),
            jac=True,
            method="L-BFGS-B",
            bounds=[(qp.lower, qp.upper)] * qp.U,
            options={"maxiter": max_iterations, "gtol": tol, "ftol": 1e-15},
        )
        y = qp.project(torch.as_tensor(result.x, dtype=qp.c.dtype, device=qp.c.device))
        iterations = int(result.nit)

    y, objective, pg_iterations, converged = _projected_gradient_descent(
        qp, y, tol, max(max_iterations - iterations, 1)
    )
    iterations += pg_iterations
    if verbose and not converged:
        warnings.warn(
            "Box QP solver stopped after %d iterations without reaching tol (%g)."
            % (iterations, tol)
        )

    return QPSolution(y, objective, iterations, converged)
