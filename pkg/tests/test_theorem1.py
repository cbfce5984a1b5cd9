import math

import pytest
import torch
from scipy.stats import norm

from iclstorch.theory import (
    Distribution1D,
    Interval,
    cbeta_interval,
    certify_theorem1,
    extreme_labeling_endpoints,
    fit_semi_1d,
    from_density,
    gaussian_mixture,
    get_distribution,
    improvement_region,
    optimal_beta,
    theorem1_trial,
    true_risk_1d,
    uniform_sign,
)


def uniform_density(low, high):
    return lambda x: 1.0 / (high - low) if low <= x <= high else 0.0


@pytest.mark.parametrize(
    "dist, lo, hi",
    [
        (uniform_sign(), -0.75, 0.75),
        (uniform_sign(0.0, 1.0), 0.0, 1.5),
        (from_density(norm.pdf, lambda x: float(x > 0)), -1 / math.sqrt(2 * math.pi), 1 / math.sqrt(2 * math.pi)),
        (from_density(uniform_density(-1.0, 1.0), lambda x: float(x > 0), -1.0, 1.0), -0.75, 0.75),
    ],
)
def test_cbeta_interval(dist, lo, hi):
    interval = cbeta_interval(dist)
    assert interval.lo == pytest.approx(lo, abs=1e-6)
    assert interval.hi == pytest.approx(hi, abs=1e-6)
    assert optimal_beta(dist) in interval


def test_gaussian_mixture_moments_match_quadrature():
    analytic = gaussian_mixture(-1.0, 2.0, 1.5, 0.3)
    pdf = lambda x: 0.7 * norm.pdf(x, -1.0, 1.5) + 0.3 * norm.pdf(x, 2.0, 1.5)
    posterior = lambda x: 0.3 * norm.pdf(x, 2.0, 1.5) / pdf(x) if pdf(x) > 0 else 0.0
    numeric = from_density(pdf, posterior)
    for field in ("ex2", "neg_xmean", "pos_xmean", "exy", "ey2"):
        assert getattr(analytic, field) == pytest.approx(getattr(numeric, field), abs=1e-7)


def test_extreme_labelings_reach_the_endpoints():
    interval = cbeta_interval(uniform_sign())
    endpoints = extreme_labeling_endpoints(uniform_density(-1.0, 1.0), -1.0, 1.0)
    assert endpoints.lo == pytest.approx(interval.lo, abs=1e-8)
    assert endpoints.hi == pytest.approx(interval.hi, abs=1e-8)
    endpoints = extreme_labeling_endpoints(norm.pdf)
    assert endpoints.hi == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-8)
    assert endpoints.lo == pytest.approx(-1 / math.sqrt(2 * math.pi), abs=1e-8)
    endpoints = extreme_labeling_endpoints(uniform_density(0.0, 1.0), 0.0, 1.0)
    assert (endpoints.lo, endpoints.hi) == pytest.approx((0.0, 1.5), abs=1e-8)


def test_true_risk():
    dist = uniform_sign()
    assert true_risk_1d(0.0, dist) == dist.ey2
    assert true_risk_1d(0.75, dist) == pytest.approx(0.3125, abs=1e-12)
    beta = optimal_beta(dist)
    slope = (true_risk_1d(beta + 1e-6, dist) - true_risk_1d(beta - 1e-6, dist)) / 2e-6
    assert abs(slope) <= 1e-8


@pytest.mark.parametrize(
    "beta_sup, interval, expected",
    [(1.0, Interval(-0.75, 0.75), 0.75), (0.5, Interval(-0.75, 0.75), 0.5), (-2.0, Interval(0.0, 1.5), 0.0)],
)
def test_fit_semi_1d(beta_sup, interval, expected):
    assert fit_semi_1d(beta_sup, interval) == expected


def fixed_draw(x, y):
    return Distribution1D(
        1 / 3, -0.25, 0.25, 0.25, 0.5,
        sampler=lambda n, generator: (torch.full((n,), x, dtype=torch.float64), torch.full((n,), y, dtype=torch.float64)),
        name="fixed",
    )


def test_single_draw_outside_interval():
    trial = theorem1_trial(fixed_draw(0.5, 1.0), 1, seed=0)
    assert trial.beta_sup == pytest.approx(2.0)
    assert trial.beta_semi == 0.75
    assert trial.risk_semi == pytest.approx(0.3125)
    assert trial.risk_sup == pytest.approx(4 / 3 - 1 + 0.5)


def test_single_draw_inside_interval():
    trial = theorem1_trial(fixed_draw(-0.5, 0.0), 1, seed=0)
    assert trial.beta_semi == trial.beta_sup == 0.0
    assert trial.risk_semi == trial.risk_sup


def test_degenerate_draws_are_redrawn():
    draws = iter([0.0, 0.0, 0.5])
    dist = Distribution1D(
        1 / 3, -0.25, 0.25, 0.25, 0.5,
        sampler=lambda n, generator: (torch.full((n,), next(draws), dtype=torch.float64), torch.ones(n, dtype=torch.float64)),
    )
    with pytest.warns(UserWarning):
        trial = theorem1_trial(dist, 1, seed=0)

    assert trial.beta_sup == pytest.approx(2.0)


@pytest.mark.parametrize("name", ["uniform-sign", "gaussian-mixture"])
@pytest.mark.parametrize("L", [1, 2, 5, 20])
def test_never_worse(name, L):
    report = certify_theorem1(get_distribution(name), L, trials=2000, seed=7)
    assert report.fraction_never_worse == 1.0
    assert report.strict_degradations == 0
    if L == 1:
        assert report.strict_improvements > 0
        assert report.z_improvement >= 10.0
        assert report.p_improvement < 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("name", ["uniform-sign", "gaussian-mixture"])
def test_sign_test_is_stable_across_seeds(name, seed):
    report = certify_theorem1(get_distribution(name), 1, trials=10000, seed=seed)
    assert report.fraction_never_worse == 1.0
    assert report.z_improvement >= 3.0


def test_sign_test_counts():
    report = certify_theorem1(fixed_draw(0.5, 1.0), 1, trials=100, seed=0)
    assert (report.strict_improvements, report.strict_degradations) == (100, 0)
    assert report.z_improvement == pytest.approx(10.0)
    assert report.p_improvement == pytest.approx(0.5 ** 100, rel=1e-9)
    assert report.median_improvement == pytest.approx(4 / 3 - 1 + 0.5 - 0.3125)
    report = certify_theorem1(fixed_draw(-0.5, 0.0), 1, trials=100, seed=0)
    assert (report.strict_improvements, report.z_improvement, report.p_improvement) == (0, 0.0, 1.0)


def test_certification_independent_of_threads():
    dist = gaussian_mixture()
    assert certify_theorem1(dist, 2, trials=500, seed=3, threads=1) == certify_theorem1(
        dist, 2, trials=500, seed=3, threads=4
    )


def test_improvement_region():
    a, b = improvement_region(uniform_sign())
    assert (a, b) == pytest.approx((-4 / 3, 4 / 3))
    assert fit_semi_1d(1 / 1.2, cbeta_interval(uniform_sign())) < 1 / 1.2


def test_rejections():
    with pytest.raises(ValueError):
        Distribution1D(0.0, 0.0, 0.0, 0.0, 0.0)

    with pytest.raises(ValueError):
        get_distribution("cauchy")

    with pytest.raises(ValueError):
        Distribution1D(1.0, -0.5, 0.5, 0.0, 0.5).sample(3, None)
