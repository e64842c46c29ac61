"""Trans-dimensional mixture machinery.

An RJObject holds an unknown number N of exchangeable components plus the
hyperparameters of their shared conditional prior, and supplies the three
Metropolis moves a mixture model needs: birth/death of components,
hyperparameter moves that transport the components through the conditional
CDF, and single-coordinate component moves in uniform space.
"""

import math
from abc import ABC, abstractmethod

import numpy as np

from .rng import wrap

__all__ = ["Laplace", "ConditionalPrior", "RJObject", "n_prior_log_mass"]


class Laplace:
    """Laplace (biexponential) distribution with location a and scale b.

    Its closed-form CDF and inverse make the uniform-space transport moves
    cheap, which is why it is the conditional prior of choice here.
    """

    def __init__(self, a, b):
        if b <= 0:
            raise ValueError(f"Laplace scale must be positive, got {b}")
        self.a = a
        self.b = b

    def log_pdf(self, x):
        return -math.log(2.0 * self.b) - abs(x - self.a) / self.b

    def cdf(self, x):
        z = (x - self.a) / self.b
        if z < 0:
            return 0.5 * math.exp(z)
        return 1.0 - 0.5 * math.exp(-z)

    def cdf_inverse(self, u):
        if not 0.0 < u < 1.0:
            raise ValueError(f"cdf_inverse requires u in (0, 1), got {u}")
        if u < 0.5:
            return self.a + self.b * math.log(2.0 * u)
        return self.a - self.b * math.log(2.0 * (1.0 - u))


def n_prior_log_mass(n, prior_type, max_num_components):
    """Log pmf of the component count under the chosen prior.

    'uniform' puts equal mass on {0, ..., max}; 'log_uniform' uses
    mass proportional to 1/(N+1) on the same support.
    """
    if not 0 <= n <= max_num_components:
        raise ValueError(f"component count {n} outside [0, {max_num_components}]")
    if prior_type == "uniform":
        return -math.log(max_num_components + 1)
    if prior_type == "log_uniform":
        norm = sum(1.0 / (k + 1) for k in range(max_num_components + 1))
        return -math.log(n + 1) - math.log(norm)
    raise ValueError(f"unknown prior type {prior_type!r}")


class ConditionalPrior(ABC):
    """The iid per-component prior p(x | alpha) and its hyperparameters.

    from_uniform / to_uniform are the coordinatewise inverse CDF / CDF of
    the conditional prior at the current hyperparameters; they must be
    exact mutual inverses. perturb_hyperparameters returns the log prior
    ratio of its own move (its proposal factors included).
    """

    @abstractmethod
    def from_prior(self, rng):
        """Draw the hyperparameter vector from its prior."""

    @abstractmethod
    def perturb_hyperparameters(self, alpha, rng):
        """Propose new hyperparameters. Returns (new_alpha, log_h)."""

    @abstractmethod
    def from_uniform(self, u, alpha):
        """Map iid U(0,1) coordinates to a component draw from p(x | alpha)."""

    @abstractmethod
    def to_uniform(self, x, alpha):
        """Inverse of from_uniform: component coordinates to (0,1)^d."""

    @abstractmethod
    def log_pdf(self, x, alpha):
        """Log density of one component under p(x | alpha)."""


class RJObject:
    """A variable-size set of components with built-in Metropolis moves."""

    def __init__(self, num_dimensions, max_num_components, fixed,
                 conditional_prior, prior_type="uniform"):
        if num_dimensions < 1:
            raise ValueError("num_dimensions must be >= 1")
        if max_num_components < 1:
            raise ValueError("max_num_components must be >= 1")
        if prior_type not in ("uniform", "log_uniform"):
            raise ValueError(f"unknown prior type {prior_type!r}")
        self.num_dimensions = num_dimensions
        self.max_num_components = max_num_components
        self.fixed = fixed
        self.prior_type = prior_type
        self.conditional_prior = conditional_prior
        self.alpha = None
        self.components = np.zeros((0, num_dimensions))

    @property
    def n(self):
        return self.components.shape[0]

    def copy(self):
        out = RJObject(
            self.num_dimensions, self.max_num_components, self.fixed,
            self.conditional_prior, self.prior_type,
        )
        out.alpha = None if self.alpha is None else np.array(self.alpha)
        out.components = self.components.copy()
        return out

    def _sample_n(self, rng):
        if self.fixed:
            return self.max_num_components
        if self.prior_type == "uniform":
            return rng.rand_int(self.max_num_components + 1)
        # log_uniform: inverse-CDF draw from the 1/(N+1) pmf
        masses = 1.0 / (np.arange(self.max_num_components + 1) + 1.0)
        cdf = np.cumsum(masses / masses.sum())
        n = int(np.searchsorted(cdf, rng.rand(), side="right"))
        return min(n, self.max_num_components)

    def from_prior(self, rng):
        """Draw hyperparameters, the component count, and the components."""
        self.alpha = self.conditional_prior.from_prior(rng)
        n = self._sample_n(rng)
        self.components = np.empty((n, self.num_dimensions))
        for i in range(n):
            self.components[i] = self.conditional_prior.from_uniform(
                rng.uniform(self.num_dimensions), self.alpha
            )

    def _n_log_mass(self, n):
        return n_prior_log_mass(n, self.prior_type, self.max_num_components)

    def _perturb_count(self, rng):
        """Birth/death: add or remove a heavy-tailed number of components.

        Births draw fresh components from the conditional prior and deaths
        remove uniformly chosen ones, so the component densities cancel and
        only the count prior's mass ratio survives.
        """
        k = int(10.0 ** (2.0 * rng.rand()) * abs(rng.randn()))
        if k < 1:
            k = 1
        n = self.n
        if rng.rand() < 0.5:
            n_new = n + k
            if n_new > self.max_num_components:
                return -math.inf
            born = np.empty((k, self.num_dimensions))
            for i in range(k):
                born[i] = self.conditional_prior.from_uniform(
                    rng.uniform(self.num_dimensions), self.alpha
                )
            self.components = np.vstack([self.components, born])
        else:
            n_new = n - k
            if n_new < 0:
                return -math.inf
            keep = np.ones(n, dtype=bool)
            for _ in range(k):
                alive = np.flatnonzero(keep)
                keep[alive[rng.rand_int(alive.size)]] = False
            self.components = self.components[keep]
        return self._n_log_mass(n_new) - self._n_log_mass(n)

    def _perturb_hyperparameters(self, rng):
        """Move alpha, transporting the components through the CDF.

        In uniform space the components are fixed; only the hyperprior's
        own log ratio enters the acceptance.
        """
        u = np.empty_like(self.components)
        for i in range(self.n):
            u[i] = self.conditional_prior.to_uniform(self.components[i], self.alpha)
        self.alpha, log_h = self.conditional_prior.perturb_hyperparameters(self.alpha, rng)
        for i in range(self.n):
            self.components[i] = self.conditional_prior.from_uniform(u[i], self.alpha)
        return log_h

    def _perturb_component(self, rng):
        """Random-walk one coordinate of one component in uniform space."""
        if self.n == 0:
            return -math.inf
        i = rng.rand_int(self.n)
        k = rng.rand_int(self.num_dimensions)
        u = self.conditional_prior.to_uniform(self.components[i], self.alpha)
        u[k] = wrap(u[k] + rng.randh(), 0.0, 1.0)
        self.components[i] = self.conditional_prior.from_uniform(u, self.alpha)
        return 0.0

    def perturb(self, rng):
        """One Metropolis proposal in place. Returns log_h (may be -inf)."""
        num_moves = 2 if self.fixed else 3
        which = rng.rand_int(num_moves)
        if self.fixed:
            which += 1  # birth/death unavailable
        if which == 0:
            return self._perturb_count(rng)
        if which == 1:
            return self._perturb_hyperparameters(rng)
        return self._perturb_component(rng)

    def print_fields(self):
        """Flat numeric field list with a constant length.

        Order: num_dimensions, max_num_components, hyperparameters, N,
        then coordinate k of every component slot for each k, zero-padded
        beyond the live components.
        """
        fields = [float(self.num_dimensions), float(self.max_num_components)]
        fields.extend(float(v) for v in self.alpha)
        fields.append(float(self.n))
        for k in range(self.num_dimensions):
            col = [0.0] * self.max_num_components
            for i in range(self.n):
                col[i] = float(self.components[i, k])
            fields.extend(col)
        return fields
