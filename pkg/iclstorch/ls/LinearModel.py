import torch

from iclstorch.utils import as_tensor


class LabeledSet:
    """Class used to hold labeled training data with labels encoded as 0 and 1.

    Parameters
    ----------
    X : torch.Tensor
        Raw feature matrix of shape (L, d). The intercept column is added internally.
    y : torch.Tensor
        Labels of length L with entries in {0, 1}.
    """

    def __init__(self, X, y):
        X = as_tensor(X, "X", ndim=2)
        y = as_tensor(y, "y", ndim=1)
        if X.shape[0] < 1:
            raise ValueError("A labeled set requires at least one object.")

        assert X.shape[0] == y.shape[0], "X has %d rows but y has %d labels." % (
            X.shape[0],
            y.shape[0],
        )
        if not bool(((y == 0) | (y == 1)).all()):
            raise ValueError("Labels must be encoded as 0 and 1.")

        self.X = X
        self.y = y

    @property
    def L(self):
        return self.X.shape[0]

    @property
    def d(self):
        return self.X.shape[1]

    def extend(self, X_u, y_u):
        """Method to append (soft or hard) labeled rows and return the design and targets.

        Parameters
        ----------
        X_u : torch.Tensor
            Additional feature rows of shape (U, d).
        y_u : torch.Tensor
            Targets for the additional rows (real-valued, not checked against {0, 1}).

        Returns
        -------
        (torch.Tensor, torch.Tensor)
            Row-concatenated features and targets.
        """
        X_u = as_tensor(X_u, "X_u", ndim=2)
        y_u = as_tensor(y_u, "y_u", ndim=1)
        assert X_u.shape[1] == self.d, "X_u must have %d columns." % self.d
        assert X_u.shape[0] == y_u.shape[0], "X_u and y_u lengths differ."
        return torch.cat([self.X, X_u]), torch.cat([self.y, y_u])

    def __repr__(self):
        return "LabeledSet(L=%d, d=%d)" % (self.L, self.d)


class LinearModel:
    """Class used to represent a fitted linear least squares classifier.

    Scores are x^T beta (with a leading constant feature when has_intercept) for plain
    models and (x - feature_means)^T beta + label_offset for centered models.

    Parameters
    ----------
    beta : torch.Tensor
        Coefficients, of length d + 1 when has_intercept (intercept first), else d.
    has_intercept : bool
        The design matrix carries a leading constant column (True).
    label_offset : float
        Offset added to every score (0 for plain models, mean label for centered models).
    feature_means : torch.Tensor
        Column means subtracted from features before scoring (centered models only).
    """

    def __init__(self, beta, has_intercept=True, label_offset=0.0, feature_means=None):
        self.beta = as_tensor(beta, "beta", ndim=1)
        self.has_intercept = bool(has_intercept)
        self.label_offset = float(label_offset)
        if feature_means is not None:
            feature_means = as_tensor(feature_means, "feature_means", ndim=1)
            assert (
                not self.has_intercept
            ), "Centered models carry their intercept through label_offset."
            assert feature_means.shape[0] == self.beta.shape[0], "feature_means and beta lengths differ."

        self.feature_means = feature_means

    @property
    def centered(self):
        return self.feature_means is not None

    @property
    def n_features(self):
        return self.beta.shape[0] - 1 if self.has_intercept else self.beta.shape[0]

    def __repr__(self):
        return "LinearModel(beta=%s, has_intercept=%s, label_offset=%g, centered=%s)" % (
            self.beta.tolist(),
            self.has_intercept,
            self.label_offset,
            self.centered,
        )
