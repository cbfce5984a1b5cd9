import numpy as np
import pytest

from iclstorch.bench import fold_partition, make_gaussian_dataset, resolve_L, sample_split


@pytest.mark.parametrize("d, expected", [(3, 20), (30, 35), (15, 20), (16, 21)])
def test_resolve_L(d, expected):
    assert resolve_L(d) == expected


def test_plan_properties(gaussian_data):
    for seed in range(1000):
        plan = sample_split(gaussian_data, U=30, seed=seed)
        indices = np.concatenate([plan.labeled_idx, plan.unlabeled_idx, plan.test_idx])
        assert len(plan.labeled_idx) == 20 and len(plan.unlabeled_idx) == 30
        assert len(np.unique(indices)) == len(indices) == gaussian_data.n
        labels = gaussian_data.y[plan.labeled_idx]
        assert (labels == 0).any() and (labels == 1).any()


def test_plan_determinism(gaussian_data):
    first = sample_split(gaussian_data, U=10, seed=4)
    second = sample_split(gaussian_data, U=10, seed=4)
    other = sample_split(gaussian_data, U=10, seed=5)
    assert all(np.array_equal(a, b) for a, b in zip(first, second))
    assert not np.array_equal(first.labeled_idx, other.labeled_idx)


def test_auto_L_for_wide_data():
    data = make_gaussian_dataset(n=100, d=30, seed=0)
    assert len(sample_split(data, U=5, seed=0).labeled_idx) == 35


def test_infeasible_sizes(gaussian_data):
    with pytest.raises(ValueError):
        sample_split(gaussian_data, L=20, U=gaussian_data.n - 20, seed=0)

    with pytest.raises(ValueError):
        sample_split(gaussian_data, L=1, U=5, seed=0)

    assert len(sample_split(gaussian_data, L=20, U=gaussian_data.n - 21, seed=0).test_idx) == 1


def test_fold_partition():
    folds = fold_partition(103, folds=10, seed=2)
    validation = np.concatenate([fold[1] for fold in folds])
    assert sorted(validation.tolist()) == list(range(103))
    for train, held_out in folds:
        assert len(np.intersect1d(train, held_out)) == 0
        assert len(train) + len(held_out) == 103

    with pytest.raises(ValueError):
        fold_partition(5, folds=10)
