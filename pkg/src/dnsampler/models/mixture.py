"""Gaussian mixture with an unknown number of components.

Components are (mu, ln sigma, ln W) triples with Laplace conditional
priors whose location/scale hyperparameters get their own diffuse priors;
mixture weights are the normalized exp(ln W). The component count has the
1/(N+1) prior on {1, ..., max}; N = 0 is rejected.
"""

import math

import numpy as np

from .. import kernels
from ..data import load_dataset
from ..model import Model
from ..rjobject import ConditionalPrior, Laplace, RJObject
from ..rng import wrap

__all__ = ["GaussianMixture", "MixtureConditionalPrior"]

# hyperparameter vector: (a_mu, log_b_mu, a_lnsigma, b_lnsigma, b_lnw)
HYPER_RANGES = (
    (-1000.0, 1000.0),
    (-10.0, 10.0),
    (-10.0, 10.0),
    (0.0, 5.0),
    (0.0, 5.0),
)
_SCALE_HYPERS = (3, 4)  # entries that must stay strictly positive


class MixtureConditionalPrior(ConditionalPrior):
    """Laplace conditional priors for (mu, ln sigma, ln W) given alpha."""

    def _laplaces(self, alpha):
        return (
            Laplace(alpha[0], math.exp(alpha[1])),
            Laplace(alpha[2], alpha[3]),
            Laplace(0.0, alpha[4]),
        )

    def from_prior(self, rng):
        alpha = np.empty(len(HYPER_RANGES))
        for i, (lo, hi) in enumerate(HYPER_RANGES):
            v = lo + (hi - lo) * rng.rand()
            while i in _SCALE_HYPERS and v == 0.0:
                v = lo + (hi - lo) * rng.rand()
            alpha[i] = v
        return alpha

    def perturb_hyperparameters(self, alpha, rng):
        alpha = alpha.copy()
        i = rng.rand_int(len(HYPER_RANGES))
        lo, hi = HYPER_RANGES[i]
        alpha[i] = wrap(alpha[i] + (hi - lo) * rng.randh(), lo, hi)
        if i in _SCALE_HYPERS and alpha[i] == 0.0:
            return alpha, -math.inf  # a Laplace scale must stay positive
        return alpha, 0.0

    def from_uniform(self, u, alpha):
        l1, l2, l3 = self._laplaces(alpha)
        return np.array(
            [l1.cdf_inverse(u[0]), l2.cdf_inverse(u[1]), l3.cdf_inverse(u[2])]
        )

    def to_uniform(self, x, alpha):
        l1, l2, l3 = self._laplaces(alpha)
        return np.array([l1.cdf(x[0]), l2.cdf(x[1]), l3.cdf(x[2])])

    def log_pdf(self, x, alpha):
        l1, l2, l3 = self._laplaces(alpha)
        return l1.log_pdf(x[0]) + l2.log_pdf(x[1]) + l3.log_pdf(x[2])


class GaussianMixture(Model):
    """Mixture-of-normals sampling distribution over a one-column dataset."""

    def __init__(self, data, max_num_components=100):
        self.data = np.ascontiguousarray(np.asarray(data).ravel())
        self.max_num_components = max_num_components

    @classmethod
    def from_file(cls, path):
        return cls(load_dataset(path))

    def _fresh(self):
        return RJObject(
            num_dimensions=3,
            max_num_components=self.max_num_components,
            fixed=False,
            conditional_prior=MixtureConditionalPrior(),
            prior_type="log_uniform",
        )

    def from_prior(self, rng):
        rj = self._fresh()
        rj.from_prior(rng)
        while rj.n == 0:  # an empty mixture cannot explain any datum
            rj.from_prior(rng)
        return rj

    def perturb(self, params, rng):
        rj = params.copy()
        log_h = rj.perturb(rng)
        if rj.n == 0:
            return rj, -math.inf
        return rj, log_h

    def log_likelihood(self, rj):
        mu = rj.components[:, 0]
        log_sigma = rj.components[:, 1]
        ln_w = rj.components[:, 2]
        m = ln_w.max()
        log_w = ln_w - (m + math.log(np.sum(np.exp(ln_w - m))))
        return kernels.mixture_loglike(self.data, mu, log_sigma, log_w)

    def print_params(self, rj):
        return " ".join(format(v, ".12g") for v in rj.print_fields())

    def description(self):
        names = [
            "num_dimensions", "max_num_components",
            "a_mu", "log_b_mu", "a_lnsigma", "b_lnsigma", "b_lnw", "N",
        ]
        for coord in ("mu", "lnsigma", "lnw"):
            names.extend(f"{coord}[{i}]" for i in range(self.max_num_components))
        return ", ".join(names)
