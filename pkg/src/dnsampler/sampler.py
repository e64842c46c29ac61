"""Two-stage diffusive nested sampling engine.

Particles carry a parameter state, a likelihood tiebreaker, and a level
index, and explore a mixture of likelihood-constrained priors. Stage one
builds levels, each compressing the prior by a nominal factor (e by
default); stage two freezes the level set, flattens the mixture weights,
and keeps refining the level masses from exceeds/visits statistics.

Writes sample.txt, sample_info.txt, and levels.txt as the run progresses.
"""

import math
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .model import MINUS_INFINITY, LikelihoodValue
from .rng import Rng, wrap

__all__ = [
    "Options",
    "Level",
    "Particle",
    "RunResult",
    "Sampler",
    "level_weight",
    "step_particle",
    "step_level_assignment",
    "maybe_create_level",
    "record_visit",
    "recalculate_log_x",
    "enough_levels",
]

# Pseudo-count regularizing the exceeds/visits compression estimator.
COMPRESSION_PSEUDO_COUNT = 100.0


@dataclass
class Options:
    """Run-control parameters: the eight OPTIONS-file values plus overrides."""

    num_particles: int = 5        # per thread
    new_level_interval: int = 10000
    save_interval: int = 10000
    thread_steps: int = 100       # steps between pooling barriers
    max_num_levels: int = 0       # 0 => automatic
    lam: float = 10.0             # backtracking scale length
    beta: float = 100.0           # equal-weight enforcement (stage two)
    max_num_saves: int = 10000    # 0 => run until terminated
    compression: float = math.e
    seed: int | None = None
    num_threads: int = 1
    data_path: str | None = None

    def validate(self):
        problems = []
        if self.num_particles < 1:
            problems.append("number of particles must be >= 1")
        if self.new_level_interval < 1:
            problems.append("new level interval must be >= 1")
        if self.save_interval < 1:
            problems.append("save interval must be >= 1")
        if self.thread_steps < 1:
            problems.append("thread steps must be >= 1")
        if self.max_num_levels < 0:
            problems.append("maximum number of levels must be >= 0")
        if not self.lam > 0:
            problems.append("lambda must be > 0")
        if self.beta < 0:
            problems.append("beta must be >= 0")
        if self.max_num_saves < 0:
            problems.append("maximum number of saves must be >= 0")
        if self.num_threads < 1:
            problems.append("number of threads must be >= 1")
        if not self.compression > 1:
            problems.append("compression must be > 1")
        if self.thread_steps > self.new_level_interval:
            problems.append("thread steps must not exceed the new level interval")
        if self.thread_steps > self.save_interval:
            problems.append("thread steps must not exceed the save interval")
        if self.compression != math.e and self.max_num_levels == 0:
            problems.append(
                "a non-default compression is incompatible with automatic "
                "level count (maximum number of levels 0)"
            )
        if problems:
            raise ValueError("invalid options: " + "; ".join(problems))


@dataclass
class Level:
    """A likelihood threshold with its estimated log prior mass and counters."""

    threshold: LikelihoodValue
    log_x: float
    accepts: int = 0
    tries: int = 0
    exceeds: int = 0
    visits: int = 0


class Particle:
    """Mutable sampler-side state of one particle."""

    __slots__ = ("params", "log_l", "tiebreaker", "level")

    def __init__(self, params, log_l, tiebreaker, level=0):
        self.params = params
        self.log_l = log_l
        self.tiebreaker = tiebreaker
        self.level = level


class _LevelView:
    """Immutable per-window snapshot of the level structure.

    Plain lists: scalar indexing in the step loop is faster than ndarray.
    """

    __slots__ = ("log_l", "tb", "log_x", "log_w", "tries", "num", "complete")

    def __init__(self, levels, lam, complete):
        self.num = len(levels)
        self.log_l = [lv.threshold.log_l for lv in levels]
        self.tb = [lv.threshold.tiebreaker for lv in levels]
        self.log_x = [lv.log_x for lv in levels]
        self.tries = [lv.tries for lv in levels]
        self.complete = complete
        self.log_w = [level_weight(j, self.num, lam, complete) for j in range(self.num)]


class _Counters:
    """Thread-local per-level counter deltas, merged at pooling barriers."""

    __slots__ = ("tries", "accepts", "visits", "exceeds")

    def __init__(self, num_levels):
        self.tries = [0] * num_levels
        self.accepts = [0] * num_levels
        self.visits = [0] * num_levels
        self.exceeds = [0] * num_levels


@dataclass
class RunResult:
    """What a completed run produced."""

    num_levels: int
    num_saves: int
    num_steps: int


def level_weight(j, num_levels, lam, complete):
    """Log mixture weight of level j (up to a constant).

    While levels are being built the weights rise as exp(j / lam), pulling
    particles toward the newest levels; once the set is complete all levels
    get equal weight.
    """
    if complete:
        return 0.0
    return (j - (num_levels - 1)) / lam


def step_particle(p, model, view, rng, counters, stash=None):
    """One Metropolis move of the parameters (and tiebreaker) at fixed level.

    Accepts iff u < exp(log_h) and the proposed (log_l, tiebreaker) exceeds
    the particle's level threshold, lexicographically. The post-move value
    is pushed onto the stash when it exceeds the top threshold.
    """
    new_params, log_h = model.perturb(p.params, rng)
    new_tb = wrap(p.tiebreaker + rng.randh(), 0.0, 1.0)
    j = p.level
    counters.tries[j] += 1
    if log_h > -math.inf and (log_h >= 0.0 or rng.rand() < math.exp(log_h)):
        new_ll = model.log_likelihood(new_params)
        if math.isnan(new_ll):
            raise ArithmeticError(
                f"model returned NaN log likelihood at {new_params!r}"
            )
        t_ll = view.log_l[j]
        if new_ll > t_ll or (new_ll == t_ll and new_tb > view.tb[j]):
            p.params = new_params
            p.log_l = new_ll
            p.tiebreaker = new_tb
            counters.accepts[j] += 1
    if stash is not None:
        top = view.num - 1
        t_ll = view.log_l[top]
        ll = p.log_l
        if ll > t_ll or (ll == t_ll and p.tiebreaker > view.tb[top]):
            stash.append((ll, p.tiebreaker))


def step_level_assignment(p, view, rng, beta):
    """One Metropolis move of the particle's level index, parameters fixed.

    The proposal is a signed heavy-tailed integer step; the acceptance
    ratio combines the mixture weights, the estimated level masses, and
    (stage two only) a beta term steering particles toward levels with
    lower historical occupancy. Occupancy is measured by tries, the one
    counter that ticks at every level on every step; the exceeds/visits
    pair cannot serve here because the top level never accrues visits.
    """
    step = int(10.0 ** (2.0 * rng.rand()) * abs(rng.randn()))
    if step < 1:
        step = 1
    j = p.level
    jp = j + step if rng.rand() < 0.5 else j - step
    if jp < 0 or jp >= view.num:
        return
    t_ll = view.log_l[jp]
    ll = p.log_l
    if not (ll > t_ll or (ll == t_ll and p.tiebreaker > view.tb[jp])):
        return
    a = (view.log_w[jp] - view.log_w[j]) + (view.log_x[j] - view.log_x[jp])
    if beta > 0.0 and view.complete:
        a += beta * math.log((view.tries[j] + 1) / (view.tries[jp] + 1))
    if a >= 0.0 or rng.rand() < math.exp(a):
        p.level = jp


def record_visit(p, view, counters):
    """Book-keep the compression statistics for the particle's level.

    Counting only starts once level j+1 exists; exceeds ticks when the
    particle's likelihood beats the next level's threshold.
    """
    j = p.level
    jn = j + 1
    if jn < view.num:
        counters.visits[j] += 1
        t_ll = view.log_l[jn]
        ll = p.log_l
        if ll > t_ll or (ll == t_ll and p.tiebreaker > view.tb[jn]):
            counters.exceeds[j] += 1


def maybe_create_level(stash, levels, options, complete=False):
    """Create one level from the stash quantile, if it is due.

    The new threshold sits at the (1 - 1/c) quantile of the stashed
    likelihoods; entries above it are retained as evidence for the next
    level. Returns the new Level or None.
    """
    if complete or len(stash) < options.new_level_interval:
        return None
    entries = sorted(stash)
    idx = int((1.0 - 1.0 / options.compression) * len(entries))
    threshold = entries[idx]
    new = Level(
        threshold=LikelihoodValue(threshold[0], threshold[1]),
        log_x=levels[-1].log_x - math.log(options.compression),
    )
    levels.append(new)
    stash[:] = [e for e in entries if e > threshold]
    recalculate_log_x(levels, options.compression)
    return new


def recalculate_log_x(levels, compression, pseudo_count=COMPRESSION_PSEUDO_COUNT):
    """Refine the level masses from the exceeds/visits statistics.

    Each compression ratio is estimated as
    (exceeds + C/c) / (visits + C), a pseudo-count prior centered on the
    nominal 1/c that defers to the empirical ratio as visits accumulate.
    Level 0 stays pinned at log_x = 0.
    """
    levels[0].log_x = 0.0
    log_x = 0.0
    for j in range(1, len(levels)):
        prev = levels[j - 1]
        ratio = (prev.exceeds + pseudo_count / compression) / (prev.visits + pseudo_count)
        log_x += math.log(ratio)
        levels[j].log_x = log_x


def enough_levels(levels, options):
    """Whether the level set is complete.

    With a fixed maximum, complete once the count is reached. In automatic
    mode, complete once at least 10 levels exist and the mean log-likelihood
    gap over the most recent min(20, count-1) threshold pairs drops below
    0.8 nats, the signature of having enclosed the posterior's weight peak.
    """
    n = len(levels)
    if options.max_num_levels > 0:
        return n >= options.max_num_levels
    if n < 10:
        return False
    k = min(20, n - 1)
    total = 0.0
    for j in range(n - k, n):
        total += levels[j].threshold.log_l - levels[j - 1].threshold.log_l
    return total / k < 0.8


class Sampler:
    """Drives the particles, builds levels, and writes the output files."""

    def __init__(self, model, options, output_dir=".", on_save=None):
        options.validate()
        self.model = model
        self.options = options
        self.output_dir = output_dir
        self.on_save = on_save
        seed = options.seed if options.seed is not None else time.time_ns()
        # stream 0 is the coordinator; workers get streams 1..num_threads
        self._rng = Rng(seed, stream=0)
        self._thread_rngs = [Rng(seed, stream=t + 1) for t in range(options.num_threads)]
        self.levels = [Level(threshold=LikelihoodValue(MINUS_INFINITY, 0.0), log_x=0.0)]
        self.particles = []   # flat; particle i belongs to thread i // num_particles
        self.stash = []
        self.complete = False

    # -- output files -----------------------------------------------------

    def _path(self, name):
        return os.path.join(self.output_dir, name)

    def _init_particles(self):
        opts = self.options
        for t in range(opts.num_threads):
            rng = self._thread_rngs[t]
            for _ in range(opts.num_particles):
                params = self.model.from_prior(rng)
                log_l = self.model.log_likelihood(params)
                if math.isnan(log_l):
                    raise ArithmeticError("model returned NaN log likelihood from the prior")
                self.particles.append(Particle(params, log_l, rng.rand()))

    def _write_levels_file(self):
        # atomic rewrite: postprocessing may read the file mid-run
        fd, tmp = tempfile.mkstemp(dir=self.output_dir, prefix="levels.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as f:
                f.write("# log_X log_likelihood tiebreaker accepts tries exceeds visits\n")
                for lv in self.levels:
                    f.write(
                        f"{float(lv.log_x)!r} {float(lv.threshold.log_l)!r} "
                        f"{float(lv.threshold.tiebreaker)!r} "
                        f"{lv.accepts} {lv.tries} {lv.exceeds} {lv.visits}\n"
                    )
            os.replace(tmp, self._path("levels.txt"))
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise

    def _save_particle(self, sample_file, info_file, count):
        opts = self.options
        idx = self._rng.rand_int(len(self.particles))
        p = self.particles[idx]
        thread = idx // opts.num_particles
        sample_file.write(self.model.print_params(p.params) + "\n")
        sample_file.flush()
        info_file.write(f"{p.level} {float(p.log_l)!r} {float(p.tiebreaker)!r} {thread}\n")
        info_file.flush()
        self._write_levels_file()
        print(f"Saving a particle to disk. N = {count}")
        if self.on_save is not None:
            self.on_save(self)

    # -- evolution --------------------------------------------------------

    def _evolve_thread(self, t):
        """Evolve thread t's particles for one pooling window.

        Reads an immutable snapshot of the levels; all mutation is confined
        to the thread's own particles, counters, and stash segment.
        """
        opts = self.options
        view = self._view
        rng = self._thread_rngs[t]
        counters = _Counters(view.num)
        stash = None if self.complete else []
        beta = opts.beta
        lo = t * opts.num_particles
        particles = self.particles[lo:lo + opts.num_particles]
        model = self.model
        for _ in range(opts.thread_steps):
            for p in particles:
                if rng.rand() < 0.5:
                    step_particle(p, model, view, rng, counters, stash)
                    step_level_assignment(p, view, rng, beta)
                else:
                    step_level_assignment(p, view, rng, beta)
                    step_particle(p, model, view, rng, counters, stash)
                record_visit(p, view, counters)
        return counters, stash

    def _pool(self, results):
        """Merge thread results in thread order; create levels; refine masses."""
        opts = self.options
        for counters, stash in results:
            for j in range(len(counters.tries)):
                lv = self.levels[j]
                lv.tries += counters.tries[j]
                lv.accepts += counters.accepts[j]
                lv.visits += counters.visits[j]
                lv.exceeds += counters.exceeds[j]
            if stash:
                self.stash.extend(stash)
        created = False
        while not self.complete:
            new = maybe_create_level(self.stash, self.levels, opts, self.complete)
            if new is None:
                break
            created = True
            print(
                f"Created level {len(self.levels) - 1} with log likelihood "
                f"{new.threshold.log_l!r}."
            )
            if enough_levels(self.levels, opts):
                self.complete = True
                self.stash.clear()
        if not created:
            recalculate_log_x(self.levels, opts.compression)

    def run(self):
        """Run to max_num_saves saves (forever if 0). Returns a RunResult."""
        opts = self.options
        self._init_particles()
        self.complete = enough_levels(self.levels, opts)
        steps = 0
        saves = 0
        steps_since_save = 0
        pool = ThreadPoolExecutor(max_workers=opts.num_threads) if opts.num_threads > 1 else None
        sample_file = open(self._path("sample.txt"), "w")
        info_file = open(self._path("sample_info.txt"), "w")
        try:
            sample_file.write("# " + self.model.description() + "\n")
            info_file.write("# level_assignment log_likelihood tiebreaker thread\n")
            self._write_levels_file()
            window = opts.num_threads * opts.num_particles * opts.thread_steps
            while opts.max_num_saves == 0 or saves < opts.max_num_saves:
                self._view = _LevelView(self.levels, opts.lam, self.complete)
                if pool is None:
                    results = [self._evolve_thread(0)]
                else:
                    results = list(pool.map(self._evolve_thread, range(opts.num_threads)))
                steps += window
                steps_since_save += window
                self._pool(results)
                while steps_since_save >= opts.save_interval and (
                    opts.max_num_saves == 0 or saves < opts.max_num_saves
                ):
                    steps_since_save -= opts.save_interval
                    saves += 1
                    self._save_particle(sample_file, info_file, saves)
        finally:
            sample_file.close()
            info_file.close()
            self._write_levels_file()
            if pool is not None:
                pool.shutdown()
        return RunResult(num_levels=len(self.levels), num_saves=saves, num_steps=steps)
