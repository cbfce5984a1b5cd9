import math
import os

import numpy as np
import pytest

from iclstorch.bench import (
    cross_validate,
    evaluate,
    learning_curve,
    load_dataset_csv,
    make_gaussian_dataset,
    results_frame,
    sample_split,
    summarize_learning_curve,
)
from iclstorch.ls import LabeledSet
from iclstorch.ssl import Method, fit_method

DATA_DIR = os.environ.get("ICLSTORCH_DATA_DIR")


def test_learning_curve_records(gaussian_data):
    results = learning_curve(
        gaussian_data, "icls,self,usm", U_schedule=[2, 8], repeats=5, seed=1, timing=False
    )
    assert len(results) == 2 * 5 * 5
    methods = {record.method for record in results}
    assert methods == {"icls", "self", "usm", "supervised", "oracle"}
    for record in results:
        assert 0.0 <= record.error <= 1.0
        assert record.test_loss >= 0.0 and math.isfinite(record.test_loss)
        assert record.train_seconds == 0.0
        assert record.L == 20


def test_learning_curve_independent_of_threads(gaussian_data):
    kwargs = dict(U_schedule=[4, 16], repeats=6, seed=9, timing=False)
    assert learning_curve(gaussian_data, ["icls"], threads=1, **kwargs) == learning_curve(
        gaussian_data, ["icls"], threads=3, **kwargs
    )


def test_stored_values_are_reproducible(gaussian_data):
    results = learning_curve(gaussian_data, ["icls"], U_schedule=[16], repeats=3, seed=2, timing=False)
    for record in results:
        plan = sample_split(gaussian_data, U=record.U, seed=record.seed)
        labeled = LabeledSet(gaussian_data.X[plan.labeled_idx], gaussian_data.y[plan.labeled_idx])
        model = fit_method(
            Method(record.method),
            labeled,
            gaussian_data.X[plan.unlabeled_idx],
            gaussian_data.y[plan.unlabeled_idx],
        )
        error, test_loss = evaluate(model, gaussian_data.X[plan.test_idx], gaussian_data.y[plan.test_idx])
        assert (error, test_loss) == (record.error, record.test_loss)


def test_schedule_truncation(gaussian_data):
    results = learning_curve(gaussian_data, ["supervised"], repeats=1, seed=0, timing=False)
    assert sorted({record.U for record in results}) == [2, 4, 8, 16, 32, 64, 128]
    with pytest.warns(UserWarning):
        results = learning_curve(
            gaussian_data, ["supervised"], U_schedule=[8, 500], repeats=1, seed=0, timing=False
        )

    assert {record.U for record in results} == {8}
    with pytest.raises(AssertionError):
        learning_curve(gaussian_data, ["supervised"], U_schedule=[8, 4], repeats=1)


def test_peaking_curve_runs_below_dimension():
    data = make_gaussian_dataset(n=120, d=20, seed=4)
    results = learning_curve(data, ["icls", "usm"], U_schedule=[2, 8, 32], repeats=3, seed=0, L=10, timing=False)
    assert all(math.isfinite(record.error) for record in results)


def test_oracle_bounds_icls_on_average(gaussian_data):
    frame = results_frame(
        learning_curve(gaussian_data, ["icls"], U_schedule=[64], repeats=100, seed=5, timing=False)
    )
    means = frame.groupby("method")["error"].mean()
    assert means["oracle"] <= means["icls"]


@pytest.mark.slow
def test_icls_not_worse_on_synthetic_learning_curve():
    data = make_gaussian_dataset(n=1000, d=2, seed=0)
    summary = summarize_learning_curve(
        learning_curve(
            data,
            ["icls"],
            U_schedule=[2 ** k for k in range(1, 9)],
            repeats=200,
            seed=0,
            threads=4,
            timing=False,
        )
    ).set_index(["U", "method"])
    for U in [2 ** k for k in range(1, 9)]:
        icls = summary.loc[(U, "icls")]
        assert icls["mean_error"] <= summary.loc[(U, "supervised"), "mean_error"] + icls["stderr_error"]


def test_cross_validate(gaussian_data):
    results = cross_validate(gaussian_data, ["icls", "self"], repeats=3, seed=1, timing=False)
    assert len(results) == 3 * 4
    assert all(record.U == 160 for record in results)
    assert len({record.seed for record in results}) == 3
    assert all(0.0 <= record.error <= 1.0 for record in results)
    assert results == cross_validate(
        gaussian_data, ["icls", "self"], repeats=3, seed=1, threads=3, timing=False
    )


def test_cross_validate_rejects_small_data():
    data = make_gaussian_dataset(n=25, d=2, seed=0)
    with pytest.raises(ValueError):
        cross_validate(data, ["icls"], repeats=1)


def test_timing_is_recorded(gaussian_data):
    results = learning_curve(gaussian_data, ["icls"], U_schedule=[8], repeats=2, timing=True)
    assert all(record.train_seconds >= 0.0 for record in results)
    assert np.sum([record.train_seconds for record in results]) > 0.0


def reference_errors(name):
    data = load_dataset_csv(os.path.join(DATA_DIR, name + ".csv"))
    frame = results_frame(cross_validate(data, ["icls", "self"], repeats=100, seed=0, threads=4, timing=False))
    return frame.groupby("method")["error"].mean()


@pytest.mark.slow
@pytest.mark.skipif(
    DATA_DIR is None or not os.path.isfile(os.path.join(DATA_DIR, "ionosphere.csv")),
    reason="requires ICLSTORCH_DATA_DIR with ionosphere.csv",
)
def test_ionosphere_cross_validation():
    errors = reference_errors("ionosphere")
    assert errors["supervised"] == pytest.approx(0.29, abs=0.03)
    assert errors["icls"] == pytest.approx(0.19, abs=0.03)
    assert errors["oracle"] == pytest.approx(0.13, abs=0.03)


@pytest.mark.slow
@pytest.mark.skipif(
    DATA_DIR is None or not os.path.isfile(os.path.join(DATA_DIR, "diabetes.csv")),
    reason="requires ICLSTORCH_DATA_DIR with diabetes.csv",
)
def test_diabetes_self_learning_is_worse_than_supervised():
    errors = reference_errors("diabetes")
    assert errors["self"] > errors["supervised"]
