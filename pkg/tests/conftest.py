import pytest
import torch

import iclstorch
from iclstorch.bench.Dataset import make_gaussian_dataset
from iclstorch.SelfCheck import micro_instance, random_problem
from iclstorch.utils import make_generator


@pytest.fixture
def micro():
    return micro_instance()


@pytest.fixture
def random_problems():
    def random_problems_(count, seed=0, **kwargs):
        generator = make_generator(seed)
        return [random_problem(generator, **kwargs) for _ in range(count)]

    return random_problems_


@pytest.fixture
def gaussian_data():
    return make_gaussian_dataset(n=200, d=2, seed=1)


@pytest.fixture
def write_csv(tmp_path):
    def write_csv_(text, name="data.csv"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write_csv_


@pytest.fixture
def device():
    return torch.device("cpu" if "cpu" in iclstorch.__version__ else "cuda")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size benchmark checks")
