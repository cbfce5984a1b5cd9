import pytest
import torch

from iclstorch.SelfCheck import (
    check_theorem1,
    check_usm_invariance,
    grid_minimum,
    micro_instance,
    random_problem,
    run_selfcheck,
)
from iclstorch.ssl import build_constraint_problem
from iclstorch.utils import DTYPE, make_generator


def test_quick_selfcheck_passes():
    results = run_selfcheck(quick=True, seed=3)
    assert [result.name for result in results] == [
        "qp-oracle",
        "psd",
        "gradient",
        "micro-instance",
        "usm-invariance",
        "self-learning",
        "wilcoxon-exact",
        "theorem1",
    ]
    failed = [result for result in results if not result.passed]
    assert failed == []


@pytest.mark.slow
def test_theorem1_full_scale():
    assert check_theorem1(trials=10000, threads=4).passed


@pytest.mark.parametrize("seed", [0, 1])
def test_usm_invariance_seeds(seed):
    assert check_usm_invariance(instances=5, seed=seed).passed


def test_generated_problems_live_on_the_package_device(device):
    labeled, X_u = random_problem(make_generator(0))
    assert labeled.X.device.type == X_u.device.type == device.type
    qp = build_constraint_problem(labeled, X_u)
    assert grid_minimum(qp, step=0.1) <= qp.objective(torch.full((qp.U,), 0.5, dtype=DTYPE, device=device)) + 1e-12
    assert micro_instance()[1].device.type == device.type
