import math

import torch
from scipy import integrate
from scipy.stats import norm

from iclstorch.utils import DTYPE

QUAD_TOL = 1e-10
MOMENT_TOL = 1e-9


class Interval:
    """Class used to represent a closed interval [lo, hi].

    Parameters
    ----------
    lo : float
        Lower endpoint.
    hi : float
        Upper endpoint, hi >= lo.
    """

    def __init__(self, lo, hi):
        assert lo <= hi, "Interval requires lo <= hi (got [%g, %g])." % (lo, hi)
        self.lo = float(lo)
        self.hi = float(hi)

    def __contains__(self, value):
        return self.lo <= value <= self.hi

    def __repr__(self):
        return "Interval(%.10g, %.10g)" % (self.lo, self.hi)


class Distribution1D:
    """Class used to describe a known univariate feature density and its label model through the moments the 1-D analysis consumes.

    Parameters
    ----------
    ex2 : float
        E[X^2].
    neg_xmean : float
        Integral of x f_X(x) over (-inf, 0].
    pos_xmean : float
        Integral of x f_X(x) over [0, inf).
    exy : float
        E[XY] = integral of x f_X(x) E[y|x].
    ey2 : float
        E[Y^2] = P(y = 1).
    sampler : function
        sampler(n, generator) returning (x, y) float64 tensors of length n. If None, sampling is unavailable.
    name : str
        Name used in reports.
    """

    def __init__(self, ex2, neg_xmean, pos_xmean, exy, ey2, sampler=None, name="custom"):
        if not ex2 > 0:
            raise ValueError("E[X^2] must be positive (got %g)." % ex2)

        assert neg_xmean <= MOMENT_TOL and pos_xmean >= -MOMENT_TOL, "Half-line first moments have the wrong sign."
        assert -MOMENT_TOL <= ey2 <= 1 + MOMENT_TOL, "E[Y^2] must be in [0, 1]."
        assert (
            neg_xmean - MOMENT_TOL <= exy <= pos_xmean + MOMENT_TOL
        ), "E[XY] must lie between the half-line first moments."
        self.ex2 = float(ex2)
        self.neg_xmean = min(float(neg_xmean), 0.0)
        self.pos_xmean = max(float(pos_xmean), 0.0)
        self.exy = float(exy)
        self.ey2 = float(ey2)
        self.sampler = sampler
        self.name = name

    def sample(self, n, generator):
        """Method to draw n labeled pairs.

        Parameters
        ----------
        n : int
            Number of pairs.
        generator : torch.Generator
            Seeded generator.

        Returns
        -------
        (torch.Tensor, torch.Tensor)
            Features and labels in {0, 1}.
        """
        if self.sampler is None:
            raise ValueError("Distribution '%s' has no sampler." % self.name)

        return self.sampler(n, generator)

    def __repr__(self):
        return (
            "Distribution1D(name=%s, ex2=%.6g, neg_xmean=%.6g, pos_xmean=%.6g, exy=%.6g, ey2=%.6g)"
            % (self.name, self.ex2, self.neg_xmean, self.pos_xmean, self.exy, self.ey2)
        )


def uniform_sign(low=-1.0, high=1.0):
    """Method to build X ~ U[low, high] with deterministic labels y = 1{x > 0}.

    Parameters
    ----------
    low : float
        Lower end of the support.
    high : float
        Upper end of the support.

    Returns
    -------
    iclstorch.theory.Distribution1D
        Distribution with analytic moments.
    """
    assert low < high, "low must be smaller than high."
    width = high - low
    ex2 = (high ** 3 - low ** 3) / (3 * width)
    neg_xmean = (min(high, 0.0) ** 2 - min(low, 0.0) ** 2) / (2 * width)
    pos_xmean = (max(high, 0.0) ** 2 - max(low, 0.0) ** 2) / (2 * width)
    ey2 = (max(high, 0.0) - max(low, 0.0)) / width

    def sampler(n, generator):
        x = low + width * torch.rand(n, generator=generator, dtype=DTYPE)
        return x, (x > 0).to(DTYPE)

    return Distribution1D(ex2, neg_xmean, pos_xmean, pos_xmean, ey2, sampler, name="uniform-sign")


def gaussian_mixture(mu0=-1.0, mu1=1.0, sigma=1.0, prior=0.5):
    """Method to build class-conditional normals: y ~ Bernoulli(prior), x | y ~ N(mu_y, sigma^2).

    Parameters
    ----------
    mu0 : float
        Mean of class 0.
    mu1 : float
        Mean of class 1.
    sigma : float
        Shared standard deviation.
    prior : float
        P(y = 1).

    Returns
    -------
    iclstorch.theory.Distribution1D
        Distribution with analytic moments.
    """
    assert sigma > 0, "sigma must be positive."
    assert 0 <= prior <= 1, "prior must be in [0, 1]."
    weights = ((1 - prior, mu0), (prior, mu1))
    ex2 = sum(w * (sigma ** 2 + mu ** 2) for w, mu in weights)
    pos_xmean = sum(
        w * (mu * norm.cdf(mu / sigma) + sigma * norm.pdf(mu / sigma)) for w, mu in weights
    )
    mean = sum(w * mu for w, mu in weights)

    def sampler(n, generator):
        y = (torch.rand(n, generator=generator, dtype=DTYPE) < prior).to(DTYPE)
        x = mu0 + (mu1 - mu0) * y + sigma * torch.randn(n, generator=generator, dtype=DTYPE)
        return x, y

    return Distribution1D(
        ex2, mean - pos_xmean, pos_xmean, prior * mu1, prior, sampler, name="gaussian-mixture"
    )


def from_density(pdf, posterior, lower=-math.inf, upper=math.inf, sampler=None, name="custom"):
    """Method to build a Distribution1D from a feature density and E[y|x] by adaptive quadrature.

    Parameters
    ----------
    pdf : function
        Feature density f_X(x).
    posterior : function
        E[y|x] with values in [0, 1].
    lower : float
        Lower end of the support.
    upper : float
        Upper end of the support.
    sampler : function
        Optional sampler(n, generator).
    name : str
        Name used in reports.

    Returns
    -------
    iclstorch.theory.Distribution1D
        Distribution with moments integrated to absolute tolerance 1e-10.
    """

    def quad(f, a, b):
        if a >= b:
            return 0.0

        return integrate.quad(f, a, b, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)[0]

    ex2 = quad(lambda x: x * x * pdf(x), lower, upper)
    neg_xmean = quad(lambda x: x * pdf(x), lower, min(0.0, upper))
    pos_xmean = quad(lambda x: x * pdf(x), max(0.0, lower), upper)
    exy = quad(lambda x: x * pdf(x) * posterior(x), lower, upper)
    ey2 = quad(lambda x: pdf(x) * posterior(x), lower, upper)
    return Distribution1D(ex2, neg_xmean, pos_xmean, exy, ey2, sampler, name=name)


supported_distributions = {
    "uniform-sign": uniform_sign,
    "gaussian-mixture": gaussian_mixture,
}


def get_distribution(name):
    """Method to build a named distribution with default parameters."""
    if name not in supported_distributions:
        raise ValueError(
            "Unknown distribution '%s'. Valid distributions are: %s."
            % (name, ", ".join(supported_distributions))
        )

    return supported_distributions[name]()
