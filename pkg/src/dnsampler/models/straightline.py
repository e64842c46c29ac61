"""Linear regression with unknown slope, intercept, and noise scale.

Priors: m, b ~ N(0, 1000^2) and ln(sigma) ~ Uniform(-10, 10). Deliberately
diffuse; the proposal for each parameter is the prior width times a
heavy-tailed step.
"""

import math

import numpy as np

from .. import kernels
from ..data import load_dataset
from ..model import Model
from ..rng import wrap

__all__ = ["StraightLine", "make_dataset"]

PRIOR_SCALE = 1e3          # sd of the m and b priors
LOG_SIGMA_RANGE = (-10.0, 10.0)


class StraightLine(Model):
    """y_i ~ Normal(m x_i + b, sigma^2) on a two-column dataset."""

    def __init__(self, data):
        data = np.asarray(data)
        self.x = np.ascontiguousarray(data[:, 0])
        self.y = np.ascontiguousarray(data[:, 1])

    @classmethod
    def from_file(cls, path):
        return cls(load_dataset(path))

    def from_prior(self, rng):
        m = PRIOR_SCALE * rng.randn()
        b = PRIOR_SCALE * rng.randn()
        sigma = math.exp(LOG_SIGMA_RANGE[0] + 20.0 * rng.rand())
        return np.array([m, b, sigma])

    def perturb(self, params, rng):
        params = params.copy()
        log_h = 0.0
        which = rng.rand_int(3)
        if which == 0 or which == 1:
            # the prior ratio of the normal prior rides along in log_h
            log_h -= -0.5 * (params[which] / PRIOR_SCALE) ** 2
            params[which] += PRIOR_SCALE * rng.randh()
            log_h += -0.5 * (params[which] / PRIOR_SCALE) ** 2
        else:
            # log-uniform prior: step ln(sigma) against a flat prior, wrap
            log_sigma = math.log(params[2])
            log_sigma += 20.0 * rng.randh()
            log_sigma = wrap(log_sigma, *LOG_SIGMA_RANGE)
            params[2] = math.exp(log_sigma)
        return params, log_h

    def log_likelihood(self, params):
        return kernels.straightline_loglike(
            self.x, self.y, params[0], params[1], params[2]
        )

    def description(self):
        return "m, b, sigma"


def make_dataset(slope=2.0, intercept=10.0, sigma=3.0, num_points=50, seed=0):
    """Synthetic regression dataset with known ground truth.

    Returns an (n, 2) array of (x, y) rows; x is evenly spread on [0, 10].
    """
    rng = np.random.default_rng(seed)
    x = np.linspace(0.0, 10.0, num_points)
    y = slope * x + intercept + sigma * rng.standard_normal(num_points)
    return np.column_stack([x, y])
