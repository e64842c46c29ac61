"""Command-line entry point.

Subcommands:
  run <model>        sample one of the bundled models
  postprocess        evidence, information, ESS, posterior samples, CSVs
  postprocess-abc    ABC posterior at a chosen threshold fraction
  diagnostics        just the diagnostics CSVs (safe mid-run)

The run subcommand reads the eight-value OPTIONS file and accepts the
overrides -o (options file), -s (seed), -d (data file), -c (compression),
and -t (threads).
"""

import argparse
import math
import sys

from .models import MODEL_NAMES, create_model
from .postprocess import emit_diagnostics, postprocess, postprocess_abc
from .rng import Rng
from .sampler import Options, Sampler

__all__ = ["main", "parse_options", "apply_flags"]

OPTION_FIELDS = (
    ("num_particles", int, "number of particles"),
    ("new_level_interval", int, "new level interval"),
    ("save_interval", int, "save interval"),
    ("thread_steps", int, "thread steps"),
    ("max_num_levels", int, "maximum number of levels"),
    ("lam", float, "backtracking scale length"),
    ("beta", float, "equal weight enforcement"),
    ("max_num_saves", int, "maximum number of saves"),
)


def parse_options(text):
    """Parse the eight-value OPTIONS file format.

    One numeric value per non-comment line, in the fixed order; comments
    start with '#' and may fill a line or trail a value.
    """
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 1:
            raise ValueError(f"OPTIONS line {lineno}: expected one value, got {body!r}")
        values.append((lineno, tokens[0]))
    if len(values) != len(OPTION_FIELDS):
        raise ValueError(
            f"expected {len(OPTION_FIELDS)} option values, got {len(values)}"
        )
    kwargs = {}
    for (name, conv, label), (lineno, token) in zip(OPTION_FIELDS, values):
        try:
            kwargs[name] = conv(float(token)) if conv is int else conv(token)
        except ValueError:
            raise ValueError(
                f"OPTIONS line {lineno}: {label} must be numeric, got {token!r}"
            ) from None
    return Options(**kwargs)


def apply_flags(options, args):
    """Overlay command-line flags on OPTIONS-file values."""
    if args.seed is not None:
        options.seed = args.seed
    if args.data is not None:
        options.data_path = args.data
    if args.threads is not None:
        options.num_threads = args.threads
    if args.compression is not None:
        if args.compression <= 1:
            raise ValueError("-c requires a compression value greater than 1")
        if options.max_num_levels == 0:
            raise ValueError(
                "-c is incompatible with setting the maximum number of levels to 0"
            )
        options.compression = args.compression
    return options


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dnsampler",
        description="Diffusive nested sampling runs and postprocessing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="sample a bundled model")
    run.add_argument("model", help=f"one of: {', '.join(MODEL_NAMES)}")
    run.add_argument("-o", dest="options", default="OPTIONS",
                     help="options file (default OPTIONS)")
    run.add_argument("-s", dest="seed", type=int, default=None,
                     help="random seed (default: system time)")
    run.add_argument("-d", dest="data", default=None, help="dataset file")
    run.add_argument("-c", dest="compression", type=float, default=None,
                     help="per-level compression factor (default e)")
    run.add_argument("-t", dest="threads", type=int, default=None,
                     help="number of threads (default 1)")
    run.add_argument("--dir", default=".", help="output directory (default .)")

    post = sub.add_parser("postprocess", help="summarize a finished or running run")
    post.add_argument("--dir", default=".", help="run directory (default .)")
    post.add_argument("--seed", type=int, default=None,
                      help="seed for posterior resampling")

    abc = sub.add_parser("postprocess-abc", help="ABC posterior from a run")
    abc.add_argument("--dir", default=".", help="run directory (default .)")
    abc.add_argument("--threshold-fraction", type=float, default=0.8,
                     help="level fraction fixing the tolerance (default 0.8)")
    abc.add_argument("--seed", type=int, default=None,
                     help="seed for posterior resampling")

    diag = sub.add_parser("diagnostics", help="write the diagnostics CSVs only")
    diag.add_argument("--dir", default=".", help="run directory (default .)")
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            if args.model not in MODEL_NAMES:
                print(f"unknown model {args.model!r}", file=sys.stderr)
                print(f"usage: dnsampler run {{{','.join(MODEL_NAMES)}}} [flags]",
                      file=sys.stderr)
                return 2
            with open(args.options) as f:
                options = parse_options(f.read())
            options = apply_flags(options, args)
            model = create_model(args.model, options.data_path)
            result = Sampler(model, options, output_dir=args.dir).run()
            print(f"Run complete: {result.num_levels} levels, "
                  f"{result.num_saves} saves.")
        elif args.command == "postprocess":
            rng = Rng(args.seed) if args.seed is not None else None
            postprocess(args.dir, rng=rng)
        elif args.command == "postprocess-abc":
            rng = Rng(args.seed) if args.seed is not None else None
            postprocess_abc(args.dir, threshold_fraction=args.threshold_fraction,
                            rng=rng)
        elif args.command == "diagnostics":
            emit_diagnostics(args.dir)
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
