"""Hot numeric kernels for the bundled models.

Each kernel exists twice: a loop-style version compiled with numba's @njit,
and a vectorized pure-numpy fallback. Set DNSAMPLER_NUMBA=0 to force the
numpy path (the numba path is also skipped automatically when numba is not
importable). ``benchmarks/bench_kernels.py`` compares the two.

The MCMC driver itself stays in plain Python: models are polymorphic Python
objects, so only their per-call numeric work is jitted.
"""

import math
import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "straightline_loglike",
    "gaussian_loglike",
    "mixture_loglike",
    "abc_minmax_discrepancy",
]

_LOG_2PI = math.log(2.0 * math.pi)


# ---------------------------------------------------------------------------
# pure-numpy implementations


def straightline_loglike_numpy(x, y, m, b, sigma):
    """Sum of normal log densities of y about the line m*x + b."""
    var = sigma * sigma
    resid = y - (m * x + b)
    n = x.shape[0]
    return -0.5 * n * math.log(2.0 * math.pi * var) - 0.5 * float(resid @ resid) / var


def gaussian_loglike_numpy(theta, s):
    """iid N(0, s^2) log-likelihood factors, one per coordinate."""
    d = theta.shape[0]
    return -0.5 * d * math.log(2.0 * math.pi * s * s) - 0.5 * float(theta @ theta) / (s * s)


def mixture_loglike_numpy(data, mu, log_sigma, log_w):
    """Gaussian-mixture log likelihood, log-sum-exp over components."""
    inv_sigma = np.exp(-log_sigma)
    z = (data[:, None] - mu[None, :]) * inv_sigma[None, :]
    terms = log_w[None, :] - log_sigma[None, :] - 0.5 * _LOG_2PI - 0.5 * z * z
    m = np.max(terms, axis=1)
    return float(np.sum(m + np.log(np.sum(np.exp(terms - m[:, None]), axis=1))))


def abc_minmax_discrepancy_numpy(n, mu, sigma, x_min, x_max):
    """Negated squared distance between simulated and observed min/max."""
    fake = mu + sigma * n
    lo = float(np.min(fake))
    hi = float(np.max(fake))
    return -((lo - x_min) ** 2) - (hi - x_max) ** 2


# ---------------------------------------------------------------------------
# numba implementations (same signatures, loop style)


def _straightline_loglike_loops(x, y, m, b, sigma):
    var = sigma * sigma
    out = -0.5 * x.shape[0] * math.log(2.0 * math.pi * var)
    acc = 0.0
    for i in range(x.shape[0]):
        r = y[i] - (m * x[i] + b)
        acc += r * r
    return out - 0.5 * acc / var


def _gaussian_loglike_loops(theta, s):
    acc = 0.0
    for i in range(theta.shape[0]):
        acc += theta[i] * theta[i]
    return -0.5 * theta.shape[0] * math.log(2.0 * math.pi * s * s) - 0.5 * acc / (s * s)


def _mixture_loglike_loops(data, mu, log_sigma, log_w):
    n_comp = mu.shape[0]
    inv_sigma = np.empty(n_comp)
    const = np.empty(n_comp)
    for j in range(n_comp):
        inv_sigma[j] = math.exp(-log_sigma[j])
        const[j] = log_w[j] - log_sigma[j] - 0.5 * _LOG_2PI
    terms = np.empty(n_comp)
    total = 0.0
    for i in range(data.shape[0]):
        best = -np.inf
        for j in range(n_comp):
            z = (data[i] - mu[j]) * inv_sigma[j]
            t = const[j] - 0.5 * z * z
            terms[j] = t
            if t > best:
                best = t
        acc = 0.0
        for j in range(n_comp):
            acc += math.exp(terms[j] - best)
        total += best + math.log(acc)
    return total


def _abc_minmax_discrepancy_loops(n, mu, sigma, x_min, x_max):
    lo = mu + sigma * n[0]
    hi = lo
    for i in range(1, n.shape[0]):
        v = mu + sigma * n[i]
        if v < lo:
            lo = v
        elif v > hi:
            hi = v
    return -((lo - x_min) ** 2) - (hi - x_max) ** 2


USE_NUMBA = os.environ.get("DNSAMPLER_NUMBA", "1").lower() not in ("0", "false", "no")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:
        USE_NUMBA = False

if USE_NUMBA:
    straightline_loglike_numba = njit(cache=True)(_straightline_loglike_loops)
    gaussian_loglike_numba = njit(cache=True)(_gaussian_loglike_loops)
    mixture_loglike_numba = njit(cache=True)(_mixture_loglike_loops)
    abc_minmax_discrepancy_numba = njit(cache=True)(_abc_minmax_discrepancy_loops)

    straightline_loglike = straightline_loglike_numba
    gaussian_loglike = gaussian_loglike_numba
    mixture_loglike = mixture_loglike_numba
    abc_minmax_discrepancy = abc_minmax_discrepancy_numba
else:
    straightline_loglike_numba = None
    gaussian_loglike_numba = None
    mixture_loglike_numba = None
    abc_minmax_discrepancy_numba = None

    straightline_loglike = straightline_loglike_numpy
    gaussian_loglike = gaussian_loglike_numpy
    mixture_loglike = mixture_loglike_numpy
    abc_minmax_discrepancy = abc_minmax_discrepancy_numpy
