"""Bundled example models and the registry the command line uses."""

import os

from ..data import data_root
from .abc_normal import AbcNormal
from .gaussian import AnalyticGaussian, analytic_gaussian_log_z
from .mixture import GaussianMixture
from .ramp import Ramp
from .straightline import StraightLine, make_dataset

__all__ = [
    "AbcNormal",
    "AnalyticGaussian",
    "GaussianMixture",
    "Ramp",
    "StraightLine",
    "analytic_gaussian_log_z",
    "make_dataset",
    "MODEL_NAMES",
    "create_model",
]

GALAXY_DATASET = "galaxies.txt"  # optional, searched for under data_root()

MODEL_NAMES = ("straightline", "gaussian", "ramp", "mixture", "abc")


def create_model(name, data_path=None):
    """Build a bundled model by name, loading its dataset when one is needed."""
    if name == "gaussian":
        return AnalyticGaussian()
    if name == "ramp":
        return Ramp()
    if name == "straightline":
        if data_path is None:
            raise ValueError(
                "the straightline model needs a two-column dataset (-d); "
                "models.make_dataset can generate a synthetic one"
            )
        return StraightLine.from_file(data_path)
    if name == "abc":
        if data_path is None:
            raise ValueError("the abc model needs a one-column dataset (-d)")
        return AbcNormal.from_file(data_path)
    if name == "mixture":
        if data_path is None:
            candidate = os.path.join(data_root(), GALAXY_DATASET)
            if not os.path.exists(candidate):
                raise ValueError(
                    "the mixture model needs a one-column dataset (-d), or "
                    f"{GALAXY_DATASET} under DNSAMPLER_PATH"
                )
            data_path = candidate
        return GaussianMixture.from_file(data_path)
    raise ValueError(f"unknown model {name!r}; choose from {', '.join(MODEL_NAMES)}")
