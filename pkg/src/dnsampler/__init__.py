"""Diffusive nested sampling.

Multi-level MCMC exploration of a mixture of likelihood-constrained priors,
yielding marginal-likelihood estimates, information, effective sample size,
and posterior samples; includes trans-dimensional mixture support and an
ABC mode.
"""

from .model import LikelihoodValue, Model
from .postprocess import (
    RunSummary,
    WeightedSample,
    compute_ess,
    compute_information,
    compute_log_z,
    emit_diagnostics,
    postprocess,
    postprocess_abc,
)
from .rjobject import ConditionalPrior, Laplace, RJObject, n_prior_log_mass
from .rng import Rng, wrap
from .sampler import Level, Options, RunResult, Sampler

__version__ = "0.1.0"

__all__ = [
    "ConditionalPrior",
    "Laplace",
    "Level",
    "LikelihoodValue",
    "Model",
    "Options",
    "RJObject",
    "Rng",
    "RunResult",
    "RunSummary",
    "Sampler",
    "WeightedSample",
    "compute_ess",
    "compute_information",
    "compute_log_z",
    "emit_diagnostics",
    "n_prior_log_mass",
    "postprocess",
    "postprocess_abc",
    "wrap",
]
