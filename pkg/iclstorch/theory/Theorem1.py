"""
Never-worse analysis of implicitly constrained least squares for a single feature
without intercept, with the feature density known (unlimited unlabeled data).
"""
import math
import warnings
from multiprocessing.pool import ThreadPool
from typing import NamedTuple

import numpy as np
from scipy import stats

from iclstorch.utils import clip, derive_seed, make_generator

from .Distribution1D import Distribution1D, Interval, from_density

NEVER_WORSE_TOL = 1e-12
MAX_RESAMPLES = 1000


class Theorem1Trial(NamedTuple):
    risk_sup: float
    risk_semi: float
    beta_sup: float
    beta_semi: float


class Theorem1Report(NamedTuple):
    distribution: str
    L: int
    trials: int
    fraction_never_worse: float
    strict_improvements: int
    strict_degradations: int
    mean_improvement: float
    median_improvement: float
    z_improvement: float
    p_improvement: float


def cbeta_interval(dist):
    """Method to compute the constraint set C_beta, an interval when d = 1 and there is no intercept.

    Its endpoints are the coefficients induced by the extreme labelings
    E[y|x] = 1{x < 0} and E[y|x] = 1{x > 0}.

    Parameters
    ----------
    dist : iclstorch.theory.Distribution1D
        Known feature distribution.

    Returns
    -------
    iclstorch.theory.Interval
        [neg_xmean / E[X^2], pos_xmean / E[X^2]].
    """
    assert isinstance(dist, Distribution1D), "dist must be a Distribution1D."
    if not dist.ex2 > 0:
        raise ValueError("E[X^2] must be positive.")

    return Interval(dist.neg_xmean / dist.ex2, dist.pos_xmean / dist.ex2)


def optimal_beta(dist):
    """Method to compute the risk minimizer beta* = E[XY] / E[X^2]."""
    return dist.exy / dist.ex2


def true_risk_1d(beta, dist):
    """Method to compute the expected squared loss R*(beta) = beta^2 E[X^2] - 2 beta E[XY] + E[Y^2].

    Parameters
    ----------
    beta : float
        Coefficient.
    dist : iclstorch.theory.Distribution1D
        Known distribution.

    Returns
    -------
    float
        Risk.
    """
    return beta * beta * dist.ex2 - 2.0 * beta * dist.exy + dist.ey2


def fit_semi_1d(beta_sup, interval):
    """Method to compute the semi-supervised estimate: beta_sup when inside the interval, else the nearer endpoint."""
    assert isinstance(interval, Interval), "interval must be an Interval."
    return clip(float(beta_sup), interval.lo, interval.hi)


def improvement_region(dist):
    """Method to compute the feature range (a, b) in which a single object labeled 1 gives beta_sup = 1/x outside C_beta.

    Any labeled pair (x, 1) with a < x < b and x != 0 yields a strict risk improvement.

    Parameters
    ----------
    dist : iclstorch.theory.Distribution1D
        Known distribution.

    Returns
    -------
    (float, float)
        (E[X^2] / neg_xmean, E[X^2] / pos_xmean), with -inf / inf for an empty half-line.
    """
    a = dist.ex2 / dist.neg_xmean if dist.neg_xmean < 0 else -math.inf
    b = dist.ex2 / dist.pos_xmean if dist.pos_xmean > 0 else math.inf
    return a, b


def extreme_labeling_endpoints(pdf, lower=-math.inf, upper=math.inf):
    """Method to recompute the C_beta endpoints from a density by integrating the extreme labelings.

    Parameters
    ----------
    pdf : function
        Feature density f_X(x).
    lower : float
        Lower end of the support.
    upper : float
        Upper end of the support.

    Returns
    -------
    iclstorch.theory.Interval
        Coefficients for E[y|x] = 1{x < 0} and E[y|x] = 1{x > 0}.
    """
    negative = from_density(pdf, lambda x: float(x < 0), lower, upper)
    positive = from_density(pdf, lambda x: float(x > 0), lower, upper)
    return Interval(negative.exy / negative.ex2, positive.exy / positive.ex2)


def theorem1_trial(dist, L, seed, interval=None):
    """Method to run one trial: sample L labeled pairs, fit beta_sup = sum(xy) / sum(x^2), clip it to C_beta and compare true risks.

    Draws with sum(x^2) = 0 are resampled from the same generator.

    Parameters
    ----------
    dist : iclstorch.theory.Distribution1D
        Distribution with a sampler.
    L : int
        Number of labeled objects, L >= 1.
    seed : int
        Trial seed.
    interval : iclstorch.theory.Interval
        Precomputed C_beta. If None, it is computed from dist.

    Returns
    -------
    iclstorch.theory.Theorem1Trial
        Risks and estimates of the supervised and semi-supervised solutions.
    """
    assert type(L) == int and L >= 1, "L must be of type int and >= 1."
    if interval is None:
        interval = cbeta_interval(dist)

    generator = make_generator(seed)
    for resample in range(MAX_RESAMPLES):
        x, y = dist.sample(L, generator)
        sxx = (x @ x).item()
        if sxx > 0:
            break
    else:
        raise ValueError("Could not draw a non-degenerate labeled sample in %d attempts." % MAX_RESAMPLES)

    if resample > 1:
        warnings.warn("Degenerate labeled sample redrawn %d times (seed %d)." % (resample, seed))

    beta_sup = (x @ y).item() / sxx
    beta_semi = fit_semi_1d(beta_sup, interval)
    return Theorem1Trial(
        true_risk_1d(beta_sup, dist), true_risk_1d(beta_semi, dist), beta_sup, beta_semi
    )


def certify_theorem1(dist, L, trials=10000, seed=0, threads=1):
    """Method to check, over seeded trials, that the clipped estimate never has higher risk than the supervised one.

    Parameters
    ----------
    dist : iclstorch.theory.Distribution1D
        Distribution with a sampler.
    L : int
        Number of labeled objects per trial.
    trials : int
        Number of trials.
    seed : int
        Master seed; trial i uses derive_seed(seed, dist.name, L, i).
    threads : int
        Worker threads. Results do not depend on it.

    Returns
    -------
    iclstorch.theory.Theorem1Report
        Never-worse fraction, improvement counts and a one-sided sign test of strict improvements against strict degradations.
    """
    assert type(trials) == int and trials >= 2, "trials must be of type int and >= 2."
    interval = cbeta_interval(dist)

    def run(i):
        return theorem1_trial(dist, L, derive_seed(seed, dist.name, L, i), interval)

    if threads > 1:
        with ThreadPool(threads) as pool:
            results = pool.map(run, range(trials), chunksize=max(1, trials // (4 * threads)))
    else:
        results = [run(i) for i in range(trials)]

    improvements = np.array([r.risk_sup - r.risk_semi for r in results])
    never_worse = int((improvements >= -NEVER_WORSE_TOL).sum())
    # The improvement is heavy tailed (like 1/x^2 near x = 0 when L = 1), so the
    # strict improvements are compared with the strict degradations by a sign test.
    better = int((improvements > NEVER_WORSE_TOL).sum())
    worse = int((improvements < -NEVER_WORSE_TOL).sum())
    if better + worse > 0:
        z = (better - worse) / math.sqrt(better + worse)
        p = stats.binomtest(better, better + worse, 0.5, alternative="greater").pvalue
    else:
        z, p = 0.0, 1.0

    return Theorem1Report(
        dist.name,
        L,
        trials,
        never_worse / trials,
        better,
        worse,
        math.fsum(improvements) / trials,
        float(np.median(improvements)),
        z,
        float(p),
    )
