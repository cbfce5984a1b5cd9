import pandas as pd
import pytest

from iclstorch.bench import (
    RepeatResult,
    summarize_cross_validation,
    summarize_learning_curve,
    wilcoxon_signed_rank,
)
from iclstorch.SelfCheck import check_wilcoxon_exact, enumerate_signed_rank_p


def test_identical_samples():
    assert wilcoxon_signed_rank([0.1, 0.2, 0.3], [0.1, 0.2, 0.3]) == (0.0, 1.0)


def test_three_positive_differences():
    statistic, p = wilcoxon_signed_rank([1.0, 2.0, 3.0], [0.0, 0.0, 0.0])
    assert statistic == 0.0
    assert p == 0.25


def test_tied_opposite_differences():
    statistic, p = wilcoxon_signed_rank([1.0, -1.0], [0.0, 0.0])
    assert statistic == 1.5
    assert p == 1.0 == enumerate_signed_rank_p([1.0, -1.0])


def test_exact_matches_enumeration():
    assert check_wilcoxon_exact(max_n=6).passed


def test_normal_approximation():
    a = [float(k) for k in range(1, 41)]
    _, p = wilcoxon_signed_rank(a, [0.0] * 40)
    assert p < 1e-6
    _, p = wilcoxon_signed_rank([(-1.0) ** k * k for k in range(1, 41)], [0.0] * 40)
    assert p > 0.5


def test_rejections():
    with pytest.raises(AssertionError):
        wilcoxon_signed_rank([1.0], [1.0, 2.0])

    with pytest.raises(ValueError):
        wilcoxon_signed_rank([], [])


def records(U=None):
    errors = {"supervised": [0.3, 0.3, 0.3, 0.3], "self": [0.4, 0.35, 0.2, 0.5], "oracle": [0.1] * 4}
    return [
        RepeatResult("toy", method, 20, 10 if U is None else U, repeat, error, 0.2, 0.0, repeat)
        for method, values in errors.items()
        for repeat, error in enumerate(values)
    ]


def test_summaries():
    summary = summarize_cross_validation(records())
    row = summary.set_index("method").loc["self"]
    assert row["mean_error"] == pytest.approx(0.3625)
    assert row["worse_than_supervised"] == 3
    assert row["repeats"] == 4
    assert not row["significantly_worse"]
    assert summary.set_index("method").loc["supervised", "wilcoxon_p"] == 1.0
    curve = summarize_learning_curve(pd.DataFrame(records(4) + records(8)))
    assert len(curve) == 6
    assert set(curve["U"]) == {4, 8}
