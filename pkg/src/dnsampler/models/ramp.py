"""One-dimensional calibration model: L(theta) = theta on a U(0,1) prior.

The enclosed prior mass above likelihood value l is exactly X(l) = 1 - l,
so every level's estimated log_x can be checked analytically.
"""

import math

import numpy as np

from ..model import Model
from ..rng import wrap

__all__ = ["Ramp"]


class Ramp(Model):
    """Linearly increasing likelihood on the unit interval."""

    def from_prior(self, rng):
        return np.array([rng.rand()])

    def perturb(self, params, rng):
        params = params.copy()
        params[0] = wrap(params[0] + rng.randh(), 0.0, 1.0)
        return params, 0.0

    def log_likelihood(self, params):
        theta = params[0]
        return math.log(theta) if theta > 0 else -math.inf

    def description(self):
        return "theta"
