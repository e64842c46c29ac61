"""Turn the three run files into evidence, information, ESS, and posteriors.

Reads sample.txt / sample_info.txt / levels.txt (possibly mid-run), assigns
each saved sample a slice of prior mass, and produces the marginal
likelihood, the prior-to-posterior information, the effective sample size,
posterior samples, ABC posteriors, and the diagnostics CSV bundle consumed
by the plotting frontend.
"""

import math
import os
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

__all__ = [
    "WeightedSample",
    "RunSummary",
    "AbcResult",
    "load_run",
    "assign_log_dx",
    "compute_log_z",
    "compute_information",
    "compute_ess",
    "resample_posterior",
    "postprocess",
    "postprocess_abc",
    "emit_diagnostics",
]


@dataclass
class WeightedSample:
    """A saved sample with its prior-mass slice and posterior weight."""

    row_index: int
    level_index: int
    log_l: float
    log_dx: float
    log_posterior_weight: float


@dataclass
class RunSummary:
    """The headline numbers of a postprocessed run."""

    log_z: float
    information: float
    ess: float


@dataclass
class AbcResult:
    """Outcome of ABC postprocessing at one discrepancy threshold."""

    epsilon: float
    log_mass: float      # ln P(discrepancy < epsilon)
    ess: float
    level_index: int
    num_kept: int


@dataclass
class RunFiles:
    """Parsed contents of the three output files."""

    sample_rows: list          # raw text rows of sample.txt
    level_assignment: np.ndarray
    log_l: np.ndarray
    tiebreaker: np.ndarray
    thread: np.ndarray
    levels: np.ndarray         # (J, 7) table from levels.txt


def _read_table(path):
    """Parse a whitespace table, tolerating a truncated final line.

    Returns (rows of floats as a list of lists, raw stripped lines).
    A short or unparseable final data line is treated as absent, because
    a writer may still be appending to it.
    """
    rows = []
    raw = []
    ncols = None
    with open(path) as f:
        lines = f.readlines()
    for k, line in enumerate(lines):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        try:
            vals = [float(tok) for tok in parts]
        except ValueError:
            vals = None
        last = k == len(lines) - 1
        if vals is None or (ncols is not None and len(vals) != ncols):
            if last:
                break
            raise ValueError(f"{path}: malformed row {k + 1}: {s!r}")
        if ncols is None:
            ncols = len(vals)
        rows.append(vals)
        raw.append(s)
    return rows, raw


def load_run(directory="."):
    """Read the three output files from a run directory."""
    sample_rows, sample_raw = _read_table(os.path.join(directory, "sample.txt"))
    info_rows, _ = _read_table(os.path.join(directory, "sample_info.txt"))
    level_rows, _ = _read_table(os.path.join(directory, "levels.txt"))
    if not level_rows:
        raise ValueError("levels.txt has no rows")
    if any(len(r) != 7 for r in level_rows):
        raise ValueError("levels.txt must have 7 columns")
    n = min(len(sample_rows), len(info_rows))
    if n == 0:
        raise ValueError("no saved samples to postprocess")
    info = np.asarray(info_rows[:n])
    levels = np.asarray(level_rows)
    level_assignment = info[:, 0].astype(int)
    if np.any(level_assignment < 0) or np.any(level_assignment >= levels.shape[0]):
        raise ValueError("sample_info references a level that is not in levels.txt")
    return RunFiles(
        sample_rows=sample_raw[:n],
        level_assignment=level_assignment,
        log_l=info[:, 1],
        tiebreaker=info[:, 2],
        thread=info[:, 3].astype(int),
        levels=levels,
    )


def _bracket_levels(run):
    """Index of the deepest level each sample's likelihood still exceeds.

    A particle saved at level j explores everything above that level's
    threshold, so slicing by the recorded index alone would credit deep
    likelihoods to shallow slices. Promoting each sample while it beats the
    next threshold bins it by likelihood, which is what the slice masses
    mean.
    """
    lvl_ll = run.levels[:, 1]
    lvl_tb = run.levels[:, 2]
    num = run.levels.shape[0]
    out = run.level_assignment.copy()
    for i in range(out.shape[0]):
        j = out[i]
        ll = run.log_l[i]
        tb = run.tiebreaker[i]
        while j + 1 < num and (
            ll > lvl_ll[j + 1] or (ll == lvl_ll[j + 1] and tb > lvl_tb[j + 1])
        ):
            j += 1
        out[i] = j
    return out


def assign_log_dx(run, bracket=None):
    """Assign each sample its log prior-mass slice and an X position.

    Level j owns the mass between X_{j+1} and X_j (X := exp(log_x), with
    X past the top level defined as 0 so the slices telescope to exactly 1).
    The n_j samples in a level split its mass evenly; ranking them by
    (log_l, tiebreaker) places each at the midpoint of its own sub-slice,
    which is the X coordinate used in the diagnostics. Levels holding no
    samples donate their mass to the nearest populated level below.

    Returns (log_dx, log_x_mid, bracket) arrays aligned with the samples.
    """
    if bracket is None:
        bracket = _bracket_levels(run)
    num_levels = run.levels.shape[0]
    x = np.exp(run.levels[:, 0])
    counts = np.bincount(bracket, minlength=num_levels)
    populated = np.flatnonzero(counts)
    if populated.size == 0:
        raise ValueError("no samples to weight")
    if populated.size < num_levels:
        warnings.warn(
            f"{num_levels - populated.size} level(s) hold no samples; "
            "their mass was merged into the nearest populated level below"
        )
    upper = np.empty(populated.size)
    lower = np.empty(populated.size)
    for k, j in enumerate(populated):
        upper[k] = x[0] if k == 0 else x[j]
        lower[k] = 0.0 if k == populated.size - 1 else x[populated[k + 1]]
    owner_of = {int(j): k for k, j in enumerate(populated)}

    log_dx = np.empty(bracket.shape[0])
    log_x_mid = np.empty(bracket.shape[0])
    order = np.lexsort((run.tiebreaker, run.log_l))
    rank = np.empty(bracket.shape[0], dtype=int)
    seen = {}
    for i in order:  # ascending likelihood rank within each level
        j = bracket[i]
        seen[j] = seen.get(j, 0) + 1
        rank[i] = seen[j]
    for i in range(bracket.shape[0]):
        k = owner_of[int(bracket[i])]
        n_j = counts[populated[k]]
        mass = upper[k] - lower[k]
        log_dx[i] = math.log(mass / n_j) if mass > 0 else -math.inf
        mid = lower[k] + mass * (n_j - rank[i] + 0.5) / n_j
        log_x_mid[i] = math.log(mid) if mid > 0 else -math.inf
    return log_dx, log_x_mid, bracket


def compute_log_z(log_dx, log_l):
    """Log marginal likelihood: log-sum-exp of log_dx + log_l."""
    combined = np.asarray(log_dx) + np.asarray(log_l)
    if np.all(np.isneginf(combined)):
        return -math.inf
    return float(logsumexp(combined))


def compute_information(log_dx, log_l, log_z):
    """Prior-to-posterior information in nats.

    H = sum_i p_i (log_l_i - log_z) with p_i the posterior weights;
    zero-weight samples contribute nothing.
    """
    log_l = np.asarray(log_l)
    p = np.exp(np.asarray(log_dx) + log_l - log_z)
    mask = p > 0
    return float(np.sum(p[mask] * (log_l[mask] - log_z)))


def compute_ess(weights):
    """Effective sample size: exp of the entropy of the normalized weights."""
    w = np.asarray(weights)
    w = w[w > 0]
    return float(np.exp(-np.sum(w * np.log(w))))


def resample_posterior(sample_rows, weights, rng, num_draws=None):
    """Draw rows with replacement, proportional to their posterior weights.

    The draw count defaults to round(ESS). Returns the selected raw rows.
    """
    w = np.asarray(weights, dtype=float)
    w = w / np.sum(w)
    if num_draws is None:
        num_draws = max(1, round(compute_ess(w)))
    cdf = np.cumsum(w)
    cdf[-1] = 1.0
    idx = np.searchsorted(cdf, rng.uniform(num_draws), side="right")
    idx = np.minimum(idx, len(sample_rows) - 1)
    return [sample_rows[i] for i in idx]


def _weights_from_run(run):
    """Shared pipeline: slice masses, evidence, information, weights."""
    log_dx, log_x_mid, bracket = assign_log_dx(run)
    log_z = compute_log_z(log_dx, run.log_l)
    if log_z == -math.inf:
        raise ValueError("every saved sample has zero likelihood")
    information = compute_information(log_dx, run.log_l, log_z)
    log_p = log_dx + run.log_l - log_z
    p = np.exp(log_p)
    return log_dx, log_x_mid, bracket, log_z, information, log_p, p


def _write_diagnostics(directory, run, log_x_mid, posterior_weights):
    """Write the three diagnostics CSVs read by the plotting frontend."""
    trace_path = os.path.join(directory, "trace.csv")
    with open(trace_path, "w") as f:
        f.write("save_index,level\n")
        for i, j in enumerate(run.level_assignment):
            f.write(f"{i + 1},{j}\n")
    levels_path = os.path.join(directory, "levels_diag.csv")
    with open(levels_path, "w") as f:
        f.write("level,delta_log_x,acceptance\n")
        for j in range(1, run.levels.shape[0]):
            delta = float(run.levels[j, 0] - run.levels[j - 1, 0])
            tries = run.levels[j, 4]
            acc = float(run.levels[j, 3] / tries) if tries > 0 else 0.0
            f.write(f"{j},{delta!r},{acc!r}\n")
    weights_path = os.path.join(directory, "weights.csv")
    order = np.argsort(log_x_mid)
    with open(weights_path, "w") as f:
        f.write("log_x,log_l,posterior_weight\n")
        for i in order:
            f.write(
                f"{float(log_x_mid[i])!r},{float(run.log_l[i])!r},"
                f"{float(posterior_weights[i])!r}\n"
            )
    return trace_path, levels_path, weights_path


def emit_diagnostics(directory="."):
    """Write trace.csv, levels_diag.csv, and weights.csv for a run directory.

    Safe to call mid-run; a partially written final sample row is ignored.
    """
    run = load_run(directory)
    _, log_x_mid, _, _, _, _, p = _weights_from_run(run)
    return _write_diagnostics(directory, run, log_x_mid, p)


def postprocess(directory=".", rng=None, write_files=True, verbose=True):
    """Full postprocessing pass over a run directory.

    Computes ln Z, information, and ESS; writes posterior_sample.txt and
    the diagnostics CSVs; prints the three summary lines. Returns
    (RunSummary, list of WeightedSample).
    """
    from .rng import Rng

    run = load_run(directory)
    log_dx, log_x_mid, bracket, log_z, information, log_p, p = _weights_from_run(run)
    ess = compute_ess(p)
    samples = [
        WeightedSample(
            row_index=i,
            level_index=int(bracket[i]),
            log_l=float(run.log_l[i]),
            log_dx=float(log_dx[i]),
            log_posterior_weight=float(log_p[i]),
        )
        for i in range(len(run.sample_rows))
    ]
    if write_files:
        if rng is None:
            rng = Rng()
        rows = resample_posterior(run.sample_rows, p, rng)
        with open(os.path.join(directory, "posterior_sample.txt"), "w") as f:
            for row in rows:
                f.write(row + "\n")
        _write_diagnostics(directory, run, log_x_mid, p)
    if verbose:
        print(f"log(Z) = {log_z}")
        print(f"Information = {information} nats.")
        print(f"Effective sample size = {ess}")
    return RunSummary(log_z=log_z, information=information, ess=ess), samples


def postprocess_abc(directory=".", threshold_fraction=0.8, rng=None,
                    write_files=True, verbose=True):
    """ABC postprocessing: fix a discrepancy threshold and resample.

    Picks level t = floor(threshold_fraction * (J - 1)), giving the
    tolerance epsilon = -log_l_t. Samples beating that threshold are
    draws from the prior restricted to {discrepancy < epsilon}; weighting
    them by their prior-mass slices alone (no likelihood factor) yields
    the ABC posterior. The level's log_x is ln P(discrepancy < epsilon).
    """
    from .rng import Rng

    if not 0 < threshold_fraction <= 1:
        raise ValueError("threshold_fraction must be in (0, 1]")
    run = load_run(directory)
    num_levels = run.levels.shape[0]
    t = int(threshold_fraction * (num_levels - 1))
    thr_ll = run.levels[t, 1]
    thr_tb = run.levels[t, 2]
    keep = (run.log_l > thr_ll) | ((run.log_l == thr_ll) & (run.tiebreaker > thr_tb))
    if not np.any(keep):
        raise ValueError(f"no saved samples above level {t}'s threshold")
    log_dx, _, _ = assign_log_dx(run)
    log_w = log_dx[keep]
    w = np.exp(log_w - logsumexp(log_w))
    ess = compute_ess(w)
    kept_rows = [run.sample_rows[i] for i in np.flatnonzero(keep)]
    if write_files:
        if rng is None:
            rng = Rng()
        rows = resample_posterior(kept_rows, w, rng)
        with open(os.path.join(directory, "posterior_sample.txt"), "w") as f:
            for row in rows:
                f.write(row + "\n")
    result = AbcResult(
        epsilon=float(-thr_ll),
        log_mass=float(run.levels[t, 0]),
        ess=ess,
        level_index=t,
        num_kept=int(np.sum(keep)),
    )
    if verbose:
        print(f"epsilon = {result.epsilon}")
        print(f"ln(P(discrepancy < epsilon)) = {result.log_mass}")
        print(f"Effective sample size = {result.ess}")
    return result
