"""Likelihood-free inference of a normal's mean and scale.

The state lives in joint (parameter, data) space: besides mu and
ln(sigma), it carries one latent standard normal per datum, so a simulated
dataset x_i = mu + sigma n_i can be assembled cheaply. The "log likelihood"
is minus the squared distance between the simulated and observed summary
statistics (the sample minimum and maximum); levels then sweep the
tolerance downward.
"""

import math

import numpy as np

from .. import kernels
from ..data import load_dataset
from ..model import Model
from ..rng import wrap

__all__ = ["AbcNormal"]

PARAM_RANGE = (-10.0, 10.0)  # for both mu and ln(sigma)


class AbcNormal(Model):
    """min/max-matching ABC model for x_i ~ Normal(mu, sigma^2)."""

    def __init__(self, data):
        data = np.asarray(data).ravel()
        self.num_data = data.shape[0]
        self.x_min = float(np.min(data))
        self.x_max = float(np.max(data))

    @classmethod
    def from_file(cls, path):
        return cls(load_dataset(path))

    def from_prior(self, rng):
        params = np.empty(2 + self.num_data)
        params[0] = PARAM_RANGE[0] + 20.0 * rng.rand()
        params[1] = PARAM_RANGE[0] + 20.0 * rng.rand()
        params[2:] = rng.normal(self.num_data)
        return params

    def perturb(self, params, rng):
        params = params.copy()
        which = rng.rand_int(3)
        if which == 0:
            params[0] = wrap(params[0] + 20.0 * rng.randh(), *PARAM_RANGE)
        elif which == 1:
            params[1] = wrap(params[1] + 20.0 * rng.randh(), *PARAM_RANGE)
        else:
            # refresh one latent from its prior: an independence move
            params[2 + rng.rand_int(self.num_data)] = rng.randn()
        return params, 0.0

    def log_likelihood(self, params):
        return kernels.abc_minmax_discrepancy(
            params[2:], params[0], math.exp(params[1]), self.x_min, self.x_max
        )

    def print_params(self, params):
        return f"{params[0]:.12g} {params[1]:.12g}"

    def description(self):
        return "mu, log_sigma"
