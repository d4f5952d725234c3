"""Stochastic simulators of the rumor process.

Two engines share one seeded random stream format:

``gillespie_run``
    embedded jump chain of the full process on a lazily grown tree;
``genealogy_run``
    per-spreader offspring sampling, generation by generation.

The hot loops live in a compiled extension when it is available and in
``_pykernels`` otherwise; :data:`BACKEND` names the one in use.
"""

from .core import (
    BACKEND,
    DEFAULT_VERTEX_BUDGET,
    ENGINES,
    SimOutcome,
    VertexBudgetExceeded,
    genealogy_run,
    gillespie_run,
    kernels,
    run,
)
from .montecarlo import Estimate, MonteCarloSummary, default_jobs, monte_carlo
from .rng import SplitMix64, derive_seed
from .tree import TruncatedTree

__all__ = [
    "BACKEND",
    "DEFAULT_VERTEX_BUDGET",
    "ENGINES",
    "Estimate",
    "MonteCarloSummary",
    "SimOutcome",
    "SplitMix64",
    "TruncatedTree",
    "VertexBudgetExceeded",
    "default_jobs",
    "derive_seed",
    "genealogy_run",
    "gillespie_run",
    "kernels",
    "monte_carlo",
    "run",
]
