"""Maki-Thompson rumor model with k-stifling on infinite Cayley trees."""

from .distributions import (
    ExactPmf,
    ModelParams,
    offspring_mean,
    offspring_pgf,
    offspring_pmf,
    root_pmf,
    stifling_sum_S,
    stifling_sum_Sstar,
)
from .progeny import IntPolynomial, iid_sum_coefficient, progeny_mean, progeny_pmf
from .survival import (
    ConvergenceError,
    FixedPointResult,
    extinction_fixed_point,
    survival_probability,
    theta_table,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "ExactPmf",
    "FixedPointResult",
    "IntPolynomial",
    "ModelParams",
    "extinction_fixed_point",
    "iid_sum_coefficient",
    "offspring_mean",
    "offspring_pgf",
    "offspring_pmf",
    "progeny_mean",
    "progeny_pmf",
    "root_pmf",
    "stifling_sum_S",
    "stifling_sum_Sstar",
    "survival_probability",
    "theta_table",
]
