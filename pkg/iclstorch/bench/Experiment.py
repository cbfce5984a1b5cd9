import time
import warnings
from multiprocessing.pool import ThreadPool
from typing import NamedTuple

import numpy as np
import torch

from iclstorch.ls.LeastSquares import classify, scores
from iclstorch.ls.LinearModel import LabeledSet
from iclstorch.ssl.Method import fit_method, with_reference_methods
from iclstorch.utils import derive_seed, make_generator

from .Split import draw_labeled, fold_partition, resolve_L, sample_split

DEFAULT_U_SCHEDULE = tuple(2 ** k for k in range(1, 11))


class RepeatResult(NamedTuple):
    dataset: str
    method: str
    L: int
    U: int
    repeat: int
    error: float
    test_loss: float
    train_seconds: float
    seed: int


def evaluate(model, X, y):
    """Method to compute the classification error and the mean squared loss of raw scores against {0, 1} targets.

    Parameters
    ----------
    model : iclstorch.ls.LinearModel
        Fitted model.
    X : torch.Tensor
        Test features.
    y : torch.Tensor
        Test labels in {0, 1}.

    Returns
    -------
    (float, float)
        Error and squared loss, both averaged over the test objects.
    """
    residual = scores(model, X) - y
    error = (classify(model, X) != y).to(y.dtype).mean().item()
    return error, (residual @ residual).item() / y.shape[0]


def _timed_fit(method, labeled, X_u, y_u, intercept, timing):
    start = time.perf_counter()
    model = fit_method(method, labeled, X_u, y_u, intercept=intercept)
    return model, (time.perf_counter() - start) if timing else 0.0


def _map(function, tasks, threads):
    if threads > 1 and len(tasks) > 1:
        with ThreadPool(threads) as pool:
            return pool.map(function, tasks)

    return [function(task) for task in tasks]


def feasible_schedule(data, L, U_schedule=None):
    """Method to restrict a U schedule to sizes that leave a non-empty test set.

    Parameters
    ----------
    data : iclstorch.bench.Dataset
        Dataset.
    L : int
        Number of labeled objects.
    U_schedule : list of int
        Requested unlabeled set sizes. If None, (2, 4, ..., 1024) is truncated silently.

    Returns
    -------
    list of int
        Feasible sizes, in the requested order.
    """
    max_U = data.n - 1 - L
    if U_schedule is None:
        return [U for U in DEFAULT_U_SCHEDULE if U <= max_U]

    U_schedule = [int(U) for U in U_schedule]
    assert len(U_schedule) > 0, "U_schedule must not be empty."
    assert all(
        U_schedule[i] < U_schedule[i + 1] for i in range(len(U_schedule) - 1)
    ), "U_schedule must be increasing."
    if U_schedule[0] < 0:
        raise ValueError("U_schedule entries must be non-negative.")

    for U in U_schedule:
        if U > max_U:
            warnings.warn(
                "Skipping U=%d for dataset '%s': with L=%d at most U=%d leaves a test set."
                % (U, data.name, L, max_U)
            )

    return [U for U in U_schedule if U <= max_U]


def learning_curve(
    data,
    methods,
    U_schedule=None,
    repeats=1000,
    seed=0,
    L=None,
    threads=1,
    timing=True,
    intercept=True,
    verbose=False,
):
    """Method to run the learning curve protocol: for every repeat and unlabeled set size U, draw a fresh split, fit every method and evaluate it on the remaining objects.

    Parameters
    ----------
    data : iclstorch.bench.Dataset
        Dataset.
    methods : list of iclstorch.ssl.Method or str
        Learners; supervised and oracle are always added.
    U_schedule : list of int
        Increasing unlabeled set sizes. If None, (2, 4, ..., 1024) truncated to feasibility.
    repeats : int
        Number of repeats per U.
    seed : int
        Master seed; repeat r at size U uses derive_seed(seed, data.name, r, U).
    L : int
        Number of labeled objects. If None, max(d + 5, 20). Values below d + 1 give peaking curves.
    threads : int
        Worker threads. Results do not depend on it.
    timing : bool
        Record wall-clock training time (True) or 0.0 (False).
    intercept : bool
        Fit an intercept (True).
    verbose : bool
        Print progress (True).

    Returns
    -------
    list of iclstorch.bench.RepeatResult
        Records ordered by (U, repeat, method).
    """
    methods = with_reference_methods(methods)
    assert type(repeats) == int and repeats >= 1, "repeats must be of type int and >= 1."
    if L is None:
        L = resolve_L(data.d)

    schedule = feasible_schedule(data, L, U_schedule)
    if len(schedule) == 0:
        raise ValueError(
            "No feasible unlabeled set size for dataset '%s' (n=%d, L=%d)." % (data.name, data.n, L)
        )

    def run(task):
        U, repeat = task
        task_seed = derive_seed(seed, data.name, repeat, U)
        plan = sample_split(data, L=L, U=U, seed=task_seed)
        labeled = LabeledSet(data.X[plan.labeled_idx], data.y[plan.labeled_idx])
        X_u, y_u = data.X[plan.unlabeled_idx], data.y[plan.unlabeled_idx]
        X_test, y_test = data.X[plan.test_idx], data.y[plan.test_idx]
        records = []
        for method in methods:
            model, seconds = _timed_fit(method, labeled, X_u, y_u, intercept, timing)
            error, test_loss = evaluate(model, X_test, y_test)
            records.append(
                RepeatResult(data.name, method.value, L, U, repeat, error, test_loss, seconds, task_seed)
            )

        return records

    results = []
    for U in schedule:
        if verbose:
            print("%s: L=%d U=%d (%d repeats)" % (data.name, L, U, repeats))

        for records in _map(run, [(U, repeat) for repeat in range(repeats)], threads):
            results.extend(records)

    return results


def cross_validate(
    data,
    methods,
    repeats=100,
    seed=0,
    L=None,
    folds=10,
    threads=1,
    timing=True,
    intercept=True,
    verbose=False,
):
    """Method to run the repeated cross-validation protocol.

    Each repeat partitions the objects into folds; for each fold, L labeled objects
    (both classes present) are drawn from the other folds, the rest of those folds is
    unlabeled, and the fold itself is predicted. Every object is predicted exactly once
    per repeat, giving one error per method and repeat.

    Parameters
    ----------
    data : iclstorch.bench.Dataset
        Dataset.
    methods : list of iclstorch.ssl.Method or str
        Learners; supervised and oracle are always added.
    repeats : int
        Number of repeats.
    seed : int
        Master seed.
    L : int
        Number of labeled objects per fold. If None, max(d + 5, 20).
    folds : int
        Number of folds.
    threads : int
        Worker threads. Results do not depend on it.
    timing : bool
        Record wall-clock training time summed over folds (True) or 0.0 (False).
    intercept : bool
        Fit an intercept (True).
    verbose : bool
        Print progress (True).

    Returns
    -------
    list of iclstorch.bench.RepeatResult
        Records ordered by (repeat, method); U is the rounded mean unlabeled pool size.
    """
    methods = with_reference_methods(methods)
    assert type(repeats) == int and repeats >= 1, "repeats must be of type int and >= 1."
    if L is None:
        L = resolve_L(data.d)

    if data.n < folds + L:
        raise ValueError(
            "Dataset '%s' is too small for %d-fold cross-validation with L=%d (n=%d < %d)."
            % (data.name, folds, L, data.n, folds + L)
        )

    def run(repeat):
        repeat_seed = derive_seed(seed, data.name, repeat, "cv")
        predicted = {method: torch.empty_like(data.y) for method in methods}
        scored = {method: torch.empty_like(data.y) for method in methods}
        seconds = {method: 0.0 for method in methods}
        pool_sizes = []
        for fold, (train, validation) in enumerate(fold_partition(data.n, folds, repeat_seed)):
            generator = make_generator(derive_seed(seed, data.name, repeat, "fold", fold))
            labeled_idx, unlabeled_idx = draw_labeled(data.y, train, L, generator)
            pool_sizes.append(len(unlabeled_idx))
            labeled = LabeledSet(data.X[labeled_idx], data.y[labeled_idx])
            X_u, y_u = data.X[unlabeled_idx], data.y[unlabeled_idx]
            X_val = data.X[validation]
            for method in methods:
                model, elapsed = _timed_fit(method, labeled, X_u, y_u, intercept, timing)
                seconds[method] += elapsed
                predicted[method][validation] = classify(model, X_val)
                scored[method][validation] = scores(model, X_val)

        U = int(round(float(np.mean(pool_sizes))))
        records = []
        for method in methods:
            residual = scored[method] - data.y
            records.append(
                RepeatResult(
                    data.name,
                    method.value,
                    L,
                    U,
                    repeat,
                    (predicted[method] != data.y).to(data.y.dtype).mean().item(),
                    (residual @ residual).item() / data.n,
                    seconds[method],
                    repeat_seed,
                )
            )

        if verbose:
            print("%s: cross-validation repeat %d done" % (data.name, repeat))

        return records

    results = []
    for records in _map(run, list(range(repeats)), threads):
        results.extend(records)

    return results
