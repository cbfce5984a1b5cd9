from enum import Enum, unique

from iclstorch.ls.LeastSquares import fit_ls

from .ICLS import fit_icls
from .Oracle import fit_oracle
from .SelfLearning import fit_self_learning
from .USM import fit_usm


@unique
class Method(Enum):
    """Learner enumeration. Values are the command-line tokens."""

    Supervised = "supervised"
    SelfLearning = "self"
    USM = "usm"
    ICLS = "icls"
    Oracle = "oracle"


supported_methods = {
    Method.Supervised: lambda labeled, X_u, y_u, intercept: fit_ls(labeled, intercept=intercept),
    Method.SelfLearning: lambda labeled, X_u, y_u, intercept: fit_self_learning(
        labeled, X_u, intercept=intercept
    ).model,
    Method.USM: lambda labeled, X_u, y_u, intercept: fit_usm(labeled, X_u),
    Method.ICLS: lambda labeled, X_u, y_u, intercept: fit_icls(
        labeled, X_u, intercept=intercept
    ).model,
    Method.Oracle: lambda labeled, X_u, y_u, intercept: fit_oracle(
        labeled, X_u, y_u, intercept=intercept
    ),
}


def parse_methods(tokens):
    """Method to convert method tokens to Method members.

    Parameters
    ----------
    tokens : str or list of str or list of iclstorch.ssl.Method
        Comma-separated string or sequence of tokens from {supervised, self, usm, icls, oracle}.

    Returns
    -------
    list of iclstorch.ssl.Method
        Methods in the given order, duplicates removed.
    """
    if isinstance(tokens, str):
        tokens = [token.strip() for token in tokens.split(",") if token.strip() != ""]

    methods = []
    for token in tokens:
        if isinstance(token, Method):
            method = token
        else:
            try:
                method = Method(token)
            except ValueError:
                raise ValueError(
                    "Unknown method '%s'. Valid methods are: %s."
                    % (token, ", ".join(m.value for m in Method))
                )

        if method not in methods:
            methods.append(method)

    if len(methods) == 0:
        raise ValueError("At least one method is required.")

    return methods


def with_reference_methods(methods):
    """Method to append the supervised and oracle reference learners when absent."""
    methods = parse_methods(methods)
    for reference in (Method.Supervised, Method.Oracle):
        if reference not in methods:
            methods.append(reference)

    return methods


def fit_method(method, labeled, X_u, y_u=None, intercept=True):
    """Method to fit any supported learner through one signature.

    Parameters
    ----------
    method : iclstorch.ssl.Method
        Learner to fit.
    labeled : iclstorch.ls.LabeledSet
        Labeled data.
    X_u : torch.Tensor
        Unlabeled features of shape (U, d).
    y_u : torch.Tensor
        True labels of the unlabeled objects (required by Method.Oracle only).
    intercept : bool
        Fit an intercept (True). USM always centers instead.

    Returns
    -------
    iclstorch.ls.LinearModel
        Fitted model.
    """
    assert method in Method, "method must be a Method Enum."
    if method == Method.Oracle:
        assert y_u is not None, "y_u is required when calling Method.Oracle."

    return supported_methods[method](labeled, X_u, y_u, intercept)
