"""Shared dataset registry.

Datasets are plain text files with whitespace-delimited numeric columns.
Each file is loaded once, marked read-only, and handed to every model that
asks for it, so concurrent likelihood evaluation never races on data.
"""

import os

import numpy as np

__all__ = ["load_dataset", "data_root"]

_cache = {}


def load_dataset(path):
    """Load a whitespace-delimited numeric table, cached and immutable.

    Always returns a 2-D read-only array (single-column files come back
    with shape (n, 1)).
    """
    key = os.path.realpath(path)
    if key not in _cache:
        arr = np.loadtxt(path, ndmin=2)
        arr.setflags(write=False)
        _cache[key] = arr
    return _cache[key]


def data_root():
    """Directory searched for bundled datasets.

    Honors the DNSAMPLER_PATH environment variable; defaults to the
    current directory.
    """
    return os.environ.get("DNSAMPLER_PATH", ".")
