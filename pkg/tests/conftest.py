"""Shared test helpers: small models and run drivers."""

import math

import numpy as np
import pytest

from dnsampler import Model, Options, Sampler
from dnsampler.rng import wrap


class ConstantModel(Model):
    """Likelihood plateau over a U(0,1) prior: exercises the tiebreakers."""

    def __init__(self, value=-3.0):
        self.value = value

    def from_prior(self, rng):
        return np.array([rng.rand()])

    def perturb(self, params, rng):
        params = params.copy()
        params[0] = wrap(params[0] + rng.randh(), 0.0, 1.0)
        return params, 0.0

    def log_likelihood(self, params):
        return self.value

    def description(self):
        return "theta"


class GridModel(Model):
    """Discrete 1-D model: 101 equally weighted points with a likelihood table.

    Its evidence is a 101-term sum, so postprocessing can be checked against
    exact enumeration. Only 101 distinct likelihood values exist, which
    forces the plateau machinery to do real work.
    """

    def __init__(self, center=0.7, width=0.1):
        theta = np.arange(101) / 100.0
        self.table = -0.5 * ((theta - center) / width) ** 2

    def from_prior(self, rng):
        return np.array([float(rng.rand_int(101))])

    def perturb(self, params, rng):
        params = params.copy()
        step = int(10.0 ** (2.0 * rng.rand()) * abs(rng.randn()))
        if step < 1:
            step = 1
        if rng.rand() < 0.5:
            step = -step
        params[0] = float((int(params[0]) + step) % 101)
        return params, 0.0

    def log_likelihood(self, params):
        return float(self.table[int(params[0])])

    def description(self):
        return "index"

    def exact_log_z(self):
        m = self.table.max()
        return float(m + np.log(np.sum(np.exp(self.table - m))) - math.log(101))


def run_sampler(model, directory, **overrides):
    """Run a model into a directory with small defaults, quietly."""
    defaults = dict(
        num_particles=5,
        new_level_interval=2000,
        save_interval=100,
        thread_steps=50,
        max_num_levels=10,
        lam=10.0,
        beta=100.0,
        max_num_saves=500,
        seed=42,
    )
    defaults.update(overrides)
    options = Options(**defaults)
    sampler = Sampler(model, options, output_dir=str(directory))
    return sampler.run()


@pytest.fixture
def quiet(capsys):
    """Swallow the sampler's progress chatter."""
    yield
    capsys.readouterr()
