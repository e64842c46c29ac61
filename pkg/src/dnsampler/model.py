"""The contract every sampled model implements, plus the likelihood ordering.

A model describes the problem, not a point in it: parameter states are
explicit values passed in and out of its methods, so the sampler can snapshot
and roll back freely and evaluate likelihoods concurrently.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

__all__ = ["LikelihoodValue", "Model"]

# Sentinel threshold for the unconstrained level: below any finite value.
MINUS_INFINITY = -1e308


@dataclass(order=True, frozen=True)
class LikelihoodValue:
    """A log-likelihood paired with a uniform tiebreaker.

    Ordering is lexicographic on (log_l, tiebreaker), which stays a strict
    total order even on likelihood plateaus, where logodds comparisons alone
    would stall level construction.
    """

    log_l: float
    tiebreaker: float = 0.0


class Model(ABC):
    """Behavioral contract consumed by the sampler.

    ``from_prior`` and ``perturb`` must describe the same prior: a long run
    with a single level is a draw from the prior, and its marginals should
    match the declared distributions.
    """

    @abstractmethod
    def from_prior(self, rng):
        """Return an independent exact draw from the prior."""

    @abstractmethod
    def perturb(self, params, rng):
        """Propose a move. Returns (new_params, log_h).

        log_h is ln[q(old|new) pi(new) / (q(new|old) pi(old))]; the
        likelihood factor is the sampler's job. Return log_h = -inf to
        force rejection of a forbidden state. ``params`` is not mutated.
        """

    @abstractmethod
    def log_likelihood(self, params):
        """Log likelihood at ``params``; finite or -inf. NaN is a model bug."""

    def print_params(self, params):
        """One space-delimited text row for the sample file."""
        return " ".join(format(float(v), ".12g") for v in params)

    def description(self):
        """Comma-separated names of the printed fields (may be empty)."""
        return ""
