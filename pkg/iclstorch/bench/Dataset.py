import os
from typing import NamedTuple

import numpy as np
import pandas as pd
import torch

from iclstorch.utils import DTYPE, as_tensor, make_generator


class ReferenceDataset(NamedTuple):
    objects: int
    features: int
    majority: float
    source: str


UCI = "https://archive.ics.uci.edu"
SSL_BENCHMARKS = "http://olivier.chapelle.cc/ssl-book/benchmarks.html"

# name -> published size, dimensionality, largest class fraction
REFERENCE_DATASETS = {
    "haberman": ReferenceDataset(306, 3, 0.74, UCI),
    "ionosphere": ReferenceDataset(351, 33, 0.64, UCI),
    "parkinsons": ReferenceDataset(195, 22, 0.75, UCI),
    "diabetes": ReferenceDataset(768, 8, 0.65, UCI),
    "sonar": ReferenceDataset(208, 60, 0.53, UCI),
    "spect": ReferenceDataset(267, 22, 0.79, UCI),
    "spectf": ReferenceDataset(267, 44, 0.79, UCI),
    "transfusion": ReferenceDataset(748, 4, 0.76, UCI),
    "wdbc": ReferenceDataset(569, 30, 0.63, UCI),
    "mammography": ReferenceDataset(961, 9, 0.54, UCI),
    "digit1": ReferenceDataset(1500, 241, 0.51, SSL_BENCHMARKS),
    "usps": ReferenceDataset(1500, 241, 0.80, SSL_BENCHMARKS),
    "coil2": ReferenceDataset(1500, 241, 0.50, SSL_BENCHMARKS),
    "bci": ReferenceDataset(400, 117, 0.50, SSL_BENCHMARKS),
    "g241c": ReferenceDataset(1500, 241, 0.50, SSL_BENCHMARKS),
    "g241d": ReferenceDataset(1500, 241, 0.50, SSL_BENCHMARKS),
}


class Dataset:
    """Class used to hold a binary classification dataset with labels encoded as 0 and 1.

    Parameters
    ----------
    name : str
        Dataset name, used in result files and seed derivation.
    X : torch.Tensor
        Feature matrix of shape (n, d).
    y : torch.Tensor
        Labels of length n with entries in {0, 1}.
    feature_names : list of str
        Column names. If None, x1, ..., xd are used.
    """

    def __init__(self, name, X, y, feature_names=None):
        X = as_tensor(X, "X", ndim=2)
        y = as_tensor(y, "y", ndim=1)
        assert X.shape[0] == y.shape[0], "X has %d rows but y has %d labels." % (
            X.shape[0],
            y.shape[0],
        )
        if X.shape[0] < 2:
            raise ValueError("Dataset '%s' requires at least 2 objects." % name)

        if not bool(((y == 0) | (y == 1)).all()):
            raise ValueError("Dataset '%s' labels must be encoded as 0 and 1." % name)

        if not (bool((y == 0).any()) and bool((y == 1).any())):
            raise ValueError("Dataset '%s' must contain objects of both classes." % name)

        if feature_names is None:
            feature_names = ["x%d" % (i + 1) for i in range(X.shape[1])]

        assert len(feature_names) == X.shape[1], "feature_names must have %d entries." % X.shape[1]
        self.name = name
        self.X = X
        self.y = y
        self.feature_names = list(feature_names)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def d(self):
        return self.X.shape[1]

    def __repr__(self):
        return "Dataset(name=%s, n=%d, d=%d)" % (self.name, self.n, self.d)


def load_dataset_csv(path, label_column=None, positive_label=None, name=None):
    """Method to load a binary classification dataset from a CSV file with a header row.

    Parameters
    ----------
    path : str
        CSV file path.
    label_column : str
        Name of the label column. If None, the last column is used.
    positive_label : str
        Label token mapped to 1. If None, the lexicographically larger of the two tokens is used.
    name : str
        Dataset name. If None, the file name without extension (lower case) is used.

    Returns
    -------
    iclstorch.bench.Dataset
        Loaded dataset; every other column is a numeric feature.
    """
    if not os.path.isfile(path):
        raise FileNotFoundError("Dataset file '%s' does not exist." % path)

    frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    if frame.shape[1] < 2:
        raise ValueError("%s: at least one feature column and one label column are required." % path)

    if label_column is None:
        label_column = frame.columns[-1]
    elif label_column not in frame.columns:
        raise ValueError(
            "%s: unknown column '%s'. Columns are: %s."
            % (path, label_column, ", ".join(frame.columns))
        )

    labels = frame[label_column].str.strip()
    tokens = sorted(labels.unique())
    if len(tokens) != 2:
        raise ValueError(
            "%s: non-binary labels in column '%s' (found %d distinct values: %s)."
            % (path, label_column, len(tokens), ", ".join(tokens[:10]))
        )

    if positive_label is None:
        positive_label = tokens[1]
    elif str(positive_label) not in tokens:
        raise ValueError(
            "%s: positive label '%s' does not occur in column '%s' (labels are %s)."
            % (path, positive_label, label_column, ", ".join(tokens))
        )

    features = frame.drop(columns=[label_column])
    values = features.apply(lambda column: pd.to_numeric(column.str.strip(), errors="coerce"))
    bad = values.isna().to_numpy() | ~np.isfinite(values.to_numpy(dtype=np.float64))
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise ValueError(
            "%s: non-numeric feature '%s' in data row %d (value '%s')."
            % (path, features.columns[col], row + 1, features.iat[row, col])
        )

    if name is None:
        name = os.path.splitext(os.path.basename(path))[0].lower()

    return Dataset(
        name,
        values.to_numpy(dtype=np.float64),
        (labels == str(positive_label)).to_numpy(dtype=np.float64),
        [str(column) for column in features.columns],
    )


def describe_dataset(data):
    """Method to compute the descriptive columns of the reference table for a loaded dataset.

    Parameters
    ----------
    data : iclstorch.bench.Dataset
        Dataset.

    Returns
    -------
    dict
        objects, features and majority (fraction of the largest class).
    """
    positive = data.y.mean().item()
    return {
        "objects": data.n,
        "features": data.d,
        "majority": max(positive, 1.0 - positive),
    }


def check_reference(data, name=None, majority_tol=0.005):
    """Method to compare a loaded dataset with its published description.

    Parameters
    ----------
    data : iclstorch.bench.Dataset
        Dataset.
    name : str
        Reference name. If None, data.name is used.
    majority_tol : float
        Allowed absolute deviation of the majority fraction.

    Returns
    -------
    list of str
        Mismatch descriptions; empty when the dataset matches.
    """
    name = (name or data.name).lower()
    if name not in REFERENCE_DATASETS:
        raise ValueError("No reference description for dataset '%s'." % name)

    reference = REFERENCE_DATASETS[name]
    description = describe_dataset(data)
    mismatches = []
    for field in ("objects", "features"):
        if description[field] != getattr(reference, field):
            mismatches.append(
                "%s: expected %d, found %d" % (field, getattr(reference, field), description[field])
            )

    if abs(description["majority"] - reference.majority) > majority_tol:
        mismatches.append(
            "majority: expected %.2f, found %.4f" % (reference.majority, description["majority"])
        )

    return mismatches


def make_gaussian_dataset(n=1000, d=2, seed=0, separation=2.0, name="gaussian"):
    """Method to generate two spherical unit-variance Gaussian classes with equal priors.

    Class means are -separation / 2 and +separation / 2 along the first feature; the
    remaining features are pure noise.

    Parameters
    ----------
    n : int
        Number of objects (split evenly between classes).
    d : int
        Number of features.
    seed : int
        Seed.
    separation : float
        Distance between the class means.
    name : str
        Dataset name.

    Returns
    -------
    iclstorch.bench.Dataset
        Synthetic dataset.
    """
    assert type(n) == int and n >= 2, "n must be of type int and >= 2."
    assert type(d) == int and d >= 1, "d must be of type int and >= 1."
    generator = make_generator(seed)
    y = torch.zeros(n, dtype=DTYPE)
    y[n // 2 :] = 1.0
    y = y[torch.randperm(n, generator=generator)]
    X = torch.randn(n, d, generator=generator, dtype=DTYPE)
    X[:, 0] += separation * (y - 0.5)
    return Dataset(name, X, y)
