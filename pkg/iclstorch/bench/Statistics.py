import math

import numpy as np
import pandas as pd
from scipy.stats import norm, rankdata

EXACT_MAX_N = 25
SIGNIFICANCE = 0.01


def signed_rank_counts(doubled_ranks):
    """Method to count sign assignments per value of the doubled positive rank sum.

    Parameters
    ----------
    doubled_ranks : numpy.ndarray
        Twice the (average) ranks of the absolute differences, as integers.

    Returns
    -------
    numpy.ndarray
        counts[k] = number of the 2^n assignments whose doubled positive rank sum equals k.
    """
    counts = np.zeros(int(np.sum(doubled_ranks)) + 1, dtype=np.int64)
    counts[0] = 1
    for rank in doubled_ranks:
        rank = int(rank)
        shifted = np.zeros_like(counts)
        shifted[rank:] = counts[: len(counts) - rank]
        counts = counts + shifted

    return counts


def wilcoxon_signed_rank(a, b):
    """Method to perform the two-sided Wilcoxon signed rank test on paired samples.

    Zero differences are dropped and tied absolute differences share their average
    rank. For at most 25 non-zero differences the p-value is exact (every sign
    assignment is counted); otherwise a normal approximation with tie correction is used.

    Parameters
    ----------
    a : array_like
        First sample.
    b : array_like
        Second sample, paired with a.

    Returns
    -------
    (float, float)
        Statistic min(W+, W-) and the two-sided p-value.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    assert a.shape == b.shape, "a and b must have equal lengths."
    if len(a) < 1:
        raise ValueError("At least one pair is required.")

    differences = a - b
    differences = differences[differences != 0]
    n = len(differences)
    if n == 0:
        return 0.0, 1.0

    ranks = rankdata(np.abs(differences))
    w_plus = float(ranks[differences > 0].sum())
    w_minus = float(ranks[differences < 0].sum())
    statistic = min(w_plus, w_minus)
    if n <= EXACT_MAX_N:
        doubled = np.rint(2 * ranks).astype(np.int64)
        counts = signed_rank_counts(doubled)
        count_le = int(counts[: int(round(2 * statistic)) + 1].sum())
        return statistic, min(1.0, 2.0 * count_le / 2 ** n)

    _, tie_sizes = np.unique(ranks, return_counts=True)
    mean = n * (n + 1) / 4.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(tie_sizes ** 3 - tie_sizes) / 48.0
    if variance <= 0:
        return statistic, 1.0

    z = (statistic - mean) / math.sqrt(variance)
    return statistic, min(1.0, 2.0 * float(norm.cdf(z)))


def _summarize(results, keys, reference="supervised"):
    frame = pd.DataFrame(results) if not isinstance(results, pd.DataFrame) else results
    reference_rows = frame[frame["method"] == reference].set_index(keys + ["repeat"])
    rows = []
    for group, block in frame.groupby(keys + ["method"], sort=False):
        errors = block["error"].to_numpy(dtype=np.float64)
        count = len(errors)
        row = dict(zip(keys + ["method"], group))
        row["repeats"] = count
        row["mean_error"] = float(errors.mean())
        row["stderr_error"] = float(errors.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
        row["mean_test_loss"] = float(block["test_loss"].mean())
        row["mean_train_seconds"] = float(block["train_seconds"].mean())
        if row["method"] == reference or len(reference_rows) == 0:
            row["worse_than_supervised"] = 0
            row["wilcoxon_p"] = 1.0
            row["significantly_worse"] = False
        else:
            paired = reference_rows.loc[
                [tuple(values) for values in block[keys + ["repeat"]].itertuples(index=False)], "error"
            ].to_numpy(dtype=np.float64)
            _, p = wilcoxon_signed_rank(errors, paired)
            row["worse_than_supervised"] = int(np.sum(errors > paired))
            row["wilcoxon_p"] = p
            row["significantly_worse"] = bool(p < SIGNIFICANCE and errors.mean() > paired.mean())

        rows.append(row)

    return pd.DataFrame(rows)


def summarize_learning_curve(results):
    """Method to summarize learning curve records per (dataset, method, U).

    Parameters
    ----------
    results : pandas.DataFrame or list of iclstorch.bench.RepeatResult
        Per-repeat records.

    Returns
    -------
    pandas.DataFrame
        Mean error, its standard error, mean test loss, mean training time, the number of
        repeats worse than supervised, the Wilcoxon p-value against supervised and a flag
        for significantly worse performance at the 0.01 level.
    """
    return _summarize(results, ["dataset", "U"])


def summarize_cross_validation(results):
    """Method to summarize cross-validation records per (dataset, method); columns as summarize_learning_curve."""
    return _summarize(results, ["dataset"])
