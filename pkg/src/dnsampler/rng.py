"""Random number utilities for the sampler and for model proposals.

Every worker owns its own :class:`Rng`; instances are cheap to construct and
must never be shared across threads. Streams are reproducible: the same
``(seed, stream)`` pair always yields the same sequence, on any platform.
"""

import math

import numpy as np

__all__ = ["Rng", "wrap"]


class Rng:
    """Seeded random stream built on PCG64.

    Parameters
    ----------
    seed : int or None
        Base seed. ``None`` draws fresh OS entropy (non-reproducible).
    stream : int
        Sub-stream index, used to give each worker thread its own
        independent stream derived from the same base seed.
    """

    def __init__(self, seed=None, stream=0):
        self.seed = seed
        self.stream = stream
        if seed is None:
            ss = np.random.SeedSequence()
        else:
            ss = np.random.SeedSequence((int(seed), int(stream)))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def rand(self):
        """Uniform draw on [0, 1)."""
        return self._gen.random()

    def randn(self):
        """Standard normal draw."""
        return self._gen.standard_normal()

    def rand_int(self, n):
        """Uniform integer from {0, ..., n-1}. Requires n >= 1."""
        if n < 1:
            raise ValueError(f"rand_int requires n >= 1, got {n}")
        k = int(n * self._gen.random())
        return k if k < n else n - 1

    def randt2(self):
        """Student-t draw with 2 degrees of freedom.

        Computed as a / sqrt(-ln b) with a ~ N(0,1), b ~ U(0,1); b = 0 is
        redrawn so the ratio stays finite.
        """
        a = self._gen.standard_normal()
        b = self._gen.random()
        while b == 0.0:
            b = self._gen.random()
        return a / math.sqrt(-math.log(b))

    def randh(self):
        """Heavy-tailed step: 10**(1.5 - 3|t|) * n with t ~ t_2, n ~ N(0,1).

        Spans many orders of magnitude, so a proposal scaled by a single
        measure of prior width explores without per-level step-size tuning.
        """
        t = self.randt2()
        return 10.0 ** (1.5 - 3.0 * abs(t)) * self._gen.standard_normal()

    def normal(self, size):
        """Vector of iid standard normal draws."""
        return self._gen.standard_normal(size)

    def uniform(self, size):
        """Vector of iid U[0,1) draws."""
        return self._gen.random(size)


def wrap(x, lo, hi):
    """Map x into [lo, hi) with periodic boundaries.

    Returns lo + ((x - lo) mod (hi - lo)); the shift from x is always an
    integer multiple of the interval width.
    """
    if lo >= hi:
        raise ValueError(f"wrap requires lo < hi, got [{lo}, {hi})")
    width = hi - lo
    r = (x - lo) % width
    if r >= width:  # guards float round-up for x just below lo
        r = 0.0
    return lo + r
