import pytest
import torch

from iclstorch.ls import LabeledSet, fit_ls, risk_hat
from iclstorch.SelfCheck import check_micro_instance, check_qp_oracle
from iclstorch.ssl import Solver, beta_from_labeling, build_constraint_problem, fit_icls
from iclstorch.utils import DTYPE


def test_micro_instance(micro):
    labeled, X_u = micro
    fit = fit_icls(labeled, X_u, intercept=False)
    assert fit.converged
    assert fit.model.beta.item() == pytest.approx(0.6, abs=1e-6)
    assert fit.y_u_star.item() == pytest.approx(1.0, abs=1e-6)
    assert fit.objective == pytest.approx(risk_hat(fit.model, labeled), abs=1e-10)
    assert check_micro_instance().passed


def test_interior_supervised_solution():
    labeled = LabeledSet([[1.0], [1.0]], [1.0, 0.0])
    fit = fit_icls(labeled, [[1.0]], intercept=False)
    assert fit.model.beta.item() == pytest.approx(0.5, abs=1e-6)


def test_zero_unlabeled_rows_keep_supervised(random_problems):
    labeled, _ = random_problems(1, seed=21, min_L=5, max_L=8)[0]
    fit = fit_icls(labeled, torch.zeros(3, labeled.d, dtype=DTYPE), intercept=False)
    assert torch.allclose(fit.model.beta, fit_ls(labeled, intercept=False).beta, atol=1e-10)


def test_no_unlabeled_data(micro):
    labeled, _ = micro
    fit = fit_icls(labeled, torch.zeros(0, 1, dtype=DTYPE), intercept=False)
    assert fit.solver_iterations == 0
    assert torch.equal(fit.model.beta, fit_ls(labeled, intercept=False).beta)


@pytest.mark.parametrize("solver", [Solver.ProjectedGradient, Solver.LBFGSB])
def test_membership_and_labeled_risk(random_problems, solver):
    for labeled, X_u in random_problems(20, seed=23, max_L=10, max_d=3, max_U=6):
        fit = fit_icls(labeled, X_u, solver=solver)
        refit = beta_from_labeling(labeled, X_u, fit.y_u_star)
        assert torch.allclose(refit.beta, fit.model.beta, atol=1e-8)
        qp = build_constraint_problem(labeled, X_u)
        assert torch.allclose(qp.beta(fit.y_u_star), fit.model.beta, atol=1e-8)
        assert risk_hat(fit.model, labeled) >= risk_hat(fit_ls(labeled), labeled) - 1e-12
        assert fit.y_u_star.min() >= 0.0 and fit.y_u_star.max() <= 1.0


def test_qp_oracle_suite():
    assert check_qp_oracle(instances=10).passed
