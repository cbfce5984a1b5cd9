import hashlib

import numpy as np
import torch

import iclstorch

DTYPE = torch.float64


def get_device():
    """Method to determine the compute device from the package build.

    Returns
    -------
    torch.device
        cpu for -cpu builds, cuda otherwise.
    """
    return torch.device("cpu" if "cpu" in iclstorch.__version__ else "cuda")


def as_tensor(value, name="value", ndim=None):
    """Method to convert a matrix or vector to a float64 tensor and check it is finite.

    Parameters
    ----------
    value : torch.Tensor, numpy.ndarray or sequence
        Values to convert.
    name : str
        Name used in error messages.
    ndim : int
        If not None, the required number of dimensions (1 for vectors, 2 for matrices).

    Returns
    -------
    torch.Tensor
        float64 tensor on the package device.
    """
    if isinstance(value, torch.Tensor):
        tensor = value.detach().to(dtype=DTYPE, device=get_device())
    else:
        tensor = torch.as_tensor(np.asarray(value, dtype=np.float64), device=get_device())

    if ndim is not None:
        if ndim == 2 and tensor.dim() == 1:
            tensor = tensor.reshape(-1, 1)

        assert tensor.dim() == ndim, "%s must be %d-dimensional, got shape %s." % (
            name,
            ndim,
            tuple(tensor.shape),
        )

    if not bool(torch.isfinite(tensor).all()):
        raise ValueError("%s contains non-finite entries." % name)

    return tensor


def clip(value, lower, upper):
    """Method to clip a float between lower and upper bounds.

    Parameters
    ----------
    value : float
        Value to clip.
    lower : float
        Lower bound.
    upper : float
        Upper bound.

    Returns
    -------
    float
        Clipped float.
    """
    return lower if value < lower else upper if value > upper else value


def derive_seed(master_seed, *keys):
    """Method to derive a reproducible 63-bit seed from a master seed and task keys.

    Parameters
    ----------
    master_seed : int
        Master seed.
    keys : object
        Task identifiers (dataset name, repeat index, U, ...).

    Returns
    -------
    int
        Seed that depends only on (master_seed, keys).
    """
    digest = hashlib.sha256(repr((int(master_seed),) + keys).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") & ((1 << 63) - 1)


def make_generator(seed):
    """Method to create a seeded CPU torch.Generator.

    Parameters
    ----------
    seed : int
        Seed.

    Returns
    -------
    torch.Generator
        Seeded generator.
    """
    generator = torch.Generator()
    generator.manual_seed(int(seed))
    return generator
