"""
Property suites checking the solver, the learners, the signed rank test and the
one-dimensional never-worse result on generated problems.
"""
import itertools
import math
from typing import NamedTuple

import numpy as np
import torch

from iclstorch.bench.Statistics import wilcoxon_signed_rank
from iclstorch.la.Pinv import min_eigenvalue
from iclstorch.ls.LeastSquares import classify
from iclstorch.ls.LinearModel import LabeledSet
from iclstorch.ssl.BoxQP import build_constraint_problem, solve_box_qp
from iclstorch.ssl.ICLS import beta_from_labeling, fit_icls
from iclstorch.ssl.SelfLearning import SELF_LEARNING_MAX_ITERATIONS, fit_self_learning
from iclstorch.ssl.USM import fit_usm
from iclstorch.theory.Distribution1D import get_distribution, supported_distributions
from iclstorch.theory.Theorem1 import certify_theorem1
from iclstorch.utils import DTYPE, derive_seed, get_device, make_generator

GRID_STEP = 0.01
GRID_SLACK = 1e-3
PSD_TOL = -1e-10
FD_STEP = 1e-6
FD_RTOL = 1e-5
NORM_FLOOR = torch.finfo(DTYPE).eps
MEMBERSHIP_TOL = 1e-8
MICRO_TOL = 1e-6


class SuiteResult(NamedTuple):
    name: str
    passed: bool
    checked: int
    detail: str


def random_problem(generator, max_L=6, max_d=3, max_U=3, min_L=2):
    """Method to draw a random labeled set with both classes and a random unlabeled matrix.

    Parameters
    ----------
    generator : torch.Generator
        Seeded generator.
    max_L : int
        Largest number of labeled objects.
    max_d : int
        Largest number of features.
    max_U : int
        Largest number of unlabeled objects (at least 1 is drawn).
    min_L : int
        Smallest number of labeled objects (>= 2).

    Returns
    -------
    (iclstorch.ls.LabeledSet, torch.Tensor)
        Labeled data and unlabeled features.
    """
    L = int(torch.randint(min_L, max_L + 1, (1,), generator=generator))
    d = int(torch.randint(1, max_d + 1, (1,), generator=generator))
    U = int(torch.randint(1, max_U + 1, (1,), generator=generator))
    y = (torch.rand(L, generator=generator, dtype=DTYPE) < 0.5).to(DTYPE)
    y[0], y[1] = 0.0, 1.0
    X = torch.randn(L, d, generator=generator, dtype=DTYPE) + (y.unsqueeze(1) - 0.5)
    X_u = torch.randn(U, d, generator=generator, dtype=DTYPE).to(get_device())
    return LabeledSet(X, y), X_u


def micro_instance():
    """Method to return the hand-derived instance: labeled {x=1, y=1}, unlabeled {x=2}, no intercept."""
    return LabeledSet([[1.0]], [1.0]), torch.tensor([[2.0]], dtype=DTYPE, device=get_device())


def grid_minimum(qp, step=GRID_STEP):
    """Method to compute the minimum of a box QP over a regular grid on [0, 1]^U."""
    axis = torch.linspace(0.0, 1.0, int(round(1.0 / step)) + 1, dtype=DTYPE, device=qp.Q.device)
    grid = torch.cartesian_prod(*([axis] * qp.U)).reshape(-1, qp.U)
    values = 0.5 * ((grid @ qp.Q) * grid).sum(dim=1) + grid @ qp.c
    return values.min().item()


def check_qp_oracle(instances=100, seed=0):
    """Method to compare the solver objective with a grid search and check C_beta membership of each solution."""
    failures = []
    for i in range(instances):
        generator = make_generator(derive_seed(seed, "qp-oracle", i))
        labeled, X_u = random_problem(generator)
        intercept = i % 2 == 0
        qp = build_constraint_problem(labeled, X_u, intercept=intercept)
        solution = solve_box_qp(qp)
        grid = grid_minimum(qp)
        if solution.objective > grid + GRID_SLACK:
            failures.append("instance %d: objective %.6g > grid %.6g" % (i, solution.objective, grid))

        fit = fit_icls(labeled, X_u, intercept=intercept)
        refit = beta_from_labeling(labeled, X_u, fit.y_u_star, intercept=intercept)
        if (refit.beta - qp.beta(fit.y_u_star)).abs().max().item() > MEMBERSHIP_TOL:
            failures.append("instance %d: refit on y_u* does not reproduce beta" % i)

    return SuiteResult("qp-oracle", len(failures) == 0, instances, "; ".join(failures[:5]))


def check_psd(instances=200, seed=0):
    """Method to check that Q is positive semi-definite on random problems."""
    worst = math.inf
    for i in range(instances):
        generator = make_generator(derive_seed(seed, "psd", i))
        labeled, X_u = random_problem(generator, max_L=10, max_d=5, max_U=8)
        qp = build_constraint_problem(labeled, X_u, intercept=i % 2 == 0)
        worst = min(worst, min_eigenvalue(qp.Q))

    return SuiteResult("psd", worst >= PSD_TOL, instances, "min eigenvalue %.3g" % worst)


def relative_error(approximate, exact):
    """Method to compute ||approximate - exact|| / ||exact||, with the denominator floored at machine epsilon."""
    return (approximate - exact).norm().item() / max(exact.norm().item(), NORM_FLOOR)


def check_gradient(instances=20, points=20, seed=0):
    """Method to compare the analytic gradient Q y + c with central finite differences at interior points."""
    worst = 0.0
    for i in range(instances):
        generator = make_generator(derive_seed(seed, "gradient", i))
        labeled, X_u = random_problem(generator, max_L=8, max_d=3, max_U=5)
        qp = build_constraint_problem(labeled, X_u, intercept=True)
        eye = torch.eye(qp.U, dtype=DTYPE, device=qp.c.device)
        for _ in range(points):
            y = (0.05 + 0.9 * torch.rand(qp.U, generator=generator, dtype=DTYPE)).to(qp.c.device)
            numeric = torch.tensor(
                [
                    (qp.objective(y + FD_STEP * e) - qp.objective(y - FD_STEP * e)) / (2 * FD_STEP)
                    for e in eye
                ],
                dtype=DTYPE,
                device=qp.c.device,
            )
            worst = max(worst, relative_error(numeric, qp.gradient(y)))

    return SuiteResult("gradient", worst <= FD_RTOL, instances * points, "max relative error %.3g" % worst)


def check_micro_instance():
    """Method to check the hand-derived instance against closed-form values and a scan over y_u."""
    labeled, X_u = micro_instance()
    qp = build_constraint_problem(labeled, X_u, intercept=False)
    fit = fit_icls(labeled, X_u, intercept=False)
    scan = torch.linspace(0.0, 1.0, 1001, dtype=DTYPE, device=qp.c.device)
    risks = [(qp.beta(y.reshape(1)).item() - 1.0) ** 2 for y in scan]
    expected = {
        "Q": (qp.Q.item(), 0.32),
        "c": (qp.c.item(), -0.64),
        "y_u*": (fit.y_u_star.item(), 1.0),
        "beta": (fit.model.beta.item(), 0.6),
        "scan argmin": (scan[int(np.argmin(risks))].item(), 1.0),
    }
    failures = ["%s=%.8g" % (key, value) for key, (value, target) in expected.items() if abs(value - target) > MICRO_TOL]
    return SuiteResult("micro-instance", len(failures) == 0, len(expected), ", ".join(failures))


def check_usm_invariance(instances=20, seed=0):
    """Method to check that swapping the label encoding complements every USM prediction."""
    failures = 0
    for i in range(instances):
        generator = make_generator(derive_seed(seed, "usm", i))
        labeled, X_u = random_problem(generator, max_L=20, max_d=4, max_U=30, min_L=5)
        X_test = torch.randn(50, labeled.d, generator=generator, dtype=DTYPE).to(get_device())
        original = classify(fit_usm(labeled, X_u), X_test)
        swapped = classify(fit_usm(LabeledSet(labeled.X, 1.0 - labeled.y), X_u), X_test)
        failures += int(not torch.equal(swapped, 1.0 - original))

    return SuiteResult("usm-invariance", failures == 0, instances, "%d failures" % failures)


def check_self_learning(instances=100, seed=0):
    """Method to check termination and the fixed-point property of self-learning."""
    failures = []
    for i in range(instances):
        generator = make_generator(derive_seed(seed, "self-learning", i))
        labeled, X_u = random_problem(generator, max_L=15, max_d=4, max_U=40, min_L=4)
        fit = fit_self_learning(labeled, X_u)
        if fit.iterations > SELF_LEARNING_MAX_ITERATIONS:
            failures.append("instance %d: %d iterations" % (i, fit.iterations))
        elif fit.converged and not torch.equal(fit.imputed, classify(fit.model, X_u)):
            failures.append("instance %d: imputed labels are not a fixed point" % i)

    return SuiteResult("self-learning", len(failures) == 0, instances, "; ".join(failures[:5]))


def enumerate_signed_rank_p(differences):
    """Method to compute the exact two-sided signed rank p-value by listing all sign assignments."""
    differences = [value for value in differences if value != 0]
    n = len(differences)
    if n == 0:
        return 1.0

    magnitudes = sorted(abs(value) for value in differences)
    ranks = {}
    for magnitude in set(magnitudes):
        positions = [k + 1 for k, value in enumerate(magnitudes) if value == magnitude]
        ranks[magnitude] = sum(positions) / len(positions)

    rank_list = [ranks[abs(value)] for value in differences]
    w_plus = sum(r for r, value in zip(rank_list, differences) if value > 0)
    w_minus = sum(r for r, value in zip(rank_list, differences) if value < 0)
    statistic = min(w_plus, w_minus)
    count = sum(
        sum(r for r, sign in zip(rank_list, signs) if sign) <= statistic
        for signs in itertools.product((False, True), repeat=n)
    )
    return min(1.0, 2.0 * count / 2 ** n)


def check_wilcoxon_exact(max_n=6):
    """Method to compare the exact signed rank p-values with direct enumeration, bit for bit, for every sign pattern of distinct and tied magnitudes up to max_n pairs."""
    checked = 0
    failures = []
    for n in range(1, max_n + 1):
        for magnitudes in ([float(k) for k in range(1, n + 1)], [float((k + 2) // 2) for k in range(n)]):
            for signs in itertools.product((-1.0, 0.0, 1.0), repeat=n):
                differences = [s * m for s, m in zip(signs, magnitudes)]
                _, p = wilcoxon_signed_rank(differences, [0.0] * n)
                expected = enumerate_signed_rank_p(differences)
                checked += 1
                if p != expected:
                    failures.append("%s: %r != %r" % (differences, p, expected))

    return SuiteResult("wilcoxon-exact", len(failures) == 0, checked, "; ".join(failures[:5]))


def check_theorem1(trials=10000, L_values=(1, 2, 5, 20), seed=0, threads=1):
    """Method to check that the clipped 1-D estimate is never worse, and that for L = 1 strict improvements significantly outnumber strict degradations."""
    failures = []
    checked = 0
    for name in supported_distributions:
        dist = get_distribution(name)
        for L in L_values:
            report = certify_theorem1(dist, L, trials=trials, seed=seed, threads=threads)
            checked += trials
            if report.fraction_never_worse < 1.0 or report.strict_degradations > 0:
                failures.append(
                    "%s L=%d: fraction %.4f, %d degradations"
                    % (name, L, report.fraction_never_worse, report.strict_degradations)
                )

            if L == 1 and not report.z_improvement >= 3.0:
                failures.append("%s L=1: sign test z=%.2f < 3" % (name, report.z_improvement))

    return SuiteResult("theorem1", len(failures) == 0, checked, "; ".join(failures))


def run_selfcheck(quick=False, seed=0, threads=1, verbose=False):
    """Method to run every property suite.

    Parameters
    ----------
    quick : bool
        Use reduced instance and trial counts (True).
    seed : int
        Master seed.
    threads : int
        Worker threads for the 1-D trials.
    verbose : bool
        Print one line per suite (True).

    Returns
    -------
    list of iclstorch.SuiteResult
        One result per suite.
    """
    scale = 0.1 if quick else 1.0

    def count(full):
        return max(1, int(full * scale))

    suites = [
        lambda: check_qp_oracle(count(100), seed),
        lambda: check_psd(count(200), seed),
        lambda: check_gradient(count(20), 20, seed),
        check_micro_instance,
        lambda: check_usm_invariance(count(20), seed),
        lambda: check_self_learning(count(100), seed),
        lambda: check_wilcoxon_exact(4 if quick else 6),
        lambda: check_theorem1(count(10000), seed=seed, threads=threads),
    ]
    results = []
    for suite in suites:
        result = suite()
        if verbose:
            print(
                "%-16s %s (%d checked) %s"
                % (result.name, "PASS" if result.passed else "FAIL", result.checked, result.detail)
            )

        results.append(result)

    return results
