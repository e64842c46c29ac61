"""Gaussian model with a closed-form evidence, used as an accuracy oracle.

Prior: theta_d iid N(0, 1). Likelihood: independent N(theta_d | 0, s^2)
factors. The evidence is the convolution of the two normals,
ln Z = -(D/2) ln(2 pi (1 + s^2)), so runs can be checked exactly.
"""

import math

import numpy as np

from .. import kernels
from ..model import Model

__all__ = ["AnalyticGaussian", "analytic_gaussian_log_z"]


def analytic_gaussian_log_z(num_dims, s):
    """Exact log evidence for the model."""
    if num_dims < 1:
        raise ValueError("num_dims must be >= 1")
    if s <= 0:
        raise ValueError("s must be positive")
    return -0.5 * num_dims * math.log(2.0 * math.pi * (1.0 + s * s))


class AnalyticGaussian(Model):
    """iid standard-normal prior with an iid N(0, s^2) likelihood."""

    def __init__(self, num_dims=5, s=0.1):
        if num_dims < 1:
            raise ValueError("num_dims must be >= 1")
        if s <= 0:
            raise ValueError("s must be positive")
        self.num_dims = num_dims
        self.s = s

    def from_prior(self, rng):
        return rng.normal(self.num_dims)

    def perturb(self, params, rng):
        params = params.copy()
        which = rng.rand_int(self.num_dims)
        log_h = 0.5 * params[which] ** 2
        params[which] += rng.randh()
        log_h -= 0.5 * params[which] ** 2
        return params, log_h

    def log_likelihood(self, params):
        return kernels.gaussian_loglike(params, self.s)

    def description(self):
        return ", ".join(f"theta{d}" for d in range(self.num_dims))

    def log_z(self):
        return analytic_gaussian_log_z(self.num_dims, self.s)
