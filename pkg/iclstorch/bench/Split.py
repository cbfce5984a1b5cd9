from typing import NamedTuple

import numpy as np
import torch
from sklearn.model_selection import KFold

from iclstorch.utils import make_generator

MIN_LABELED = 20
LABELED_SURPLUS = 5
MAX_REDRAWS = 1000


class SplitPlan(NamedTuple):
    """Disjoint labeled, unlabeled and test index arrays into a Dataset."""

    labeled_idx: np.ndarray
    unlabeled_idx: np.ndarray
    test_idx: np.ndarray


def resolve_L(d):
    """Method to compute the default number of labeled objects, max(d + 5, 20)."""
    return max(d + LABELED_SURPLUS, MIN_LABELED)


def draw_labeled(y, pool, L, generator):
    """Method to draw L labeled indices uniformly without replacement from pool, redrawing until both classes appear.

    Parameters
    ----------
    y : torch.Tensor
        Labels of the full dataset.
    pool : numpy.ndarray
        Candidate indices.
    L : int
        Number of labeled objects, 2 <= L <= len(pool).
    generator : torch.Generator
        Seeded generator.

    Returns
    -------
    (numpy.ndarray, numpy.ndarray)
        Labeled indices and the remaining pool, both in draw order.
    """
    pool = np.asarray(pool, dtype=np.int64)
    assert 2 <= L <= len(pool), "L must be between 2 and the pool size (%d)." % len(pool)
    pool_labels = y[torch.as_tensor(pool)]
    if not (bool((pool_labels == 0).any()) and bool((pool_labels == 1).any())):
        raise ValueError("The labeled pool does not contain objects of both classes.")

    for _ in range(MAX_REDRAWS):
        order = pool[torch.randperm(len(pool), generator=generator).numpy()]
        labels = y[torch.as_tensor(order[:L])]
        if bool((labels == 0).any()) and bool((labels == 1).any()):
            return order[:L], order[L:]

    raise ValueError(
        "Could not draw %d labeled objects containing both classes in %d attempts."
        % (L, MAX_REDRAWS)
    )


def sample_split(data, L=None, U=0, seed=0):
    """Method to draw labeled, unlabeled and test sets for one repeat of the learning curve protocol.

    Parameters
    ----------
    data : iclstorch.bench.Dataset
        Dataset.
    L : int
        Number of labeled objects. If None, max(d + 5, 20) is used.
    U : int
        Number of unlabeled objects.
    seed : int
        Seed.

    Returns
    -------
    iclstorch.bench.SplitPlan
        Split whose test set holds every object that is neither labeled nor unlabeled.
    """
    if L is None:
        L = resolve_L(data.d)

    assert type(L) == int and type(U) == int, "L and U must be of type int."
    if L < 2:
        raise ValueError("At least 2 labeled objects are required to cover both classes (got L=%d)." % L)

    if U < 0 or L + U > data.n - 1:
        raise ValueError(
            "Infeasible split for dataset '%s': L + U = %d but at most n - 1 = %d objects can be used."
            % (data.name, L + U, data.n - 1)
        )

    generator = make_generator(seed)
    labeled, rest = draw_labeled(data.y, np.arange(data.n), L, generator)
    rest = rest[torch.randperm(len(rest), generator=generator).numpy()]
    return SplitPlan(labeled, rest[:U], np.sort(rest[U:]))


def fold_partition(n, folds=10, seed=0):
    """Method to partition range(n) into shuffled validation folds; every index is in exactly one fold.

    Parameters
    ----------
    n : int
        Number of objects.
    folds : int
        Number of folds.
    seed : int
        Seed.

    Returns
    -------
    list of (numpy.ndarray, numpy.ndarray)
        (train_idx, validation_idx) per fold.
    """
    if n < folds:
        raise ValueError("Cannot split %d objects into %d folds." % (n, folds))

    kfold = KFold(n_splits=folds, shuffle=True, random_state=seed % (2 ** 32))
    return [(train, validation) for train, validation in kfold.split(np.arange(n))]
