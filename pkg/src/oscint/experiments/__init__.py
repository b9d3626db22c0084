"""Catalog of benchmark problems."""

from .catalog import (
    ProblemSpec, experiment1, fpu, multifreq, harmonic, build_problem, perturb_initial
)

__all__ = [
    "ProblemSpec",
    "experiment1",
    "fpu",
    "multifreq",
    "harmonic",
    "build_problem",
    "perturb_initial",
]
