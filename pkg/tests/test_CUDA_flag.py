import sys

import pytest

sys.path.insert(0, "..")


def test_CUDA_flag():
    CUDA_is_false = False
    with open("setup.py", "r") as f:
        for line in f.readlines():
            if line.strip() == "CUDA = False":
                CUDA_is_false = True
                break

    assert CUDA_is_false


def test_cpu_version_suffix():
    import iclstorch

    assert iclstorch.__version__.endswith("-cpu")
