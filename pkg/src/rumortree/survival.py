"""Extinction fixed point and survival probability of the rumor."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .distributions import ModelParams, offspring_mean, offspring_pmf, root_pmf

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MAX_ITER = 10_000_000


class ConvergenceError(RuntimeError):
    """The fixed-point iteration hit its iteration cap."""


@dataclass(frozen=True)
class FixedPointResult:
    psi: float
    iterations: int
    residual: float
    converged: bool


def _coefficients(params: ModelParams) -> list[float]:
    pmf = offspring_pmf(params)
    return [float(pmf[i]) for i in range(params.d + 1)]


def _horner(coeffs: Sequence[float], s: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def extinction_fixed_point(params: ModelParams, tol: float = DEFAULT_TOL,
                           max_iter: int = MAX_ITER) -> FixedPointResult:
    """Smallest root of ``phi(s) = s`` on ``[0, 1]``.

    Iterates ``s <- phi(s)`` from ``s = 0``; for a pgf the iterates rise
    monotonically to the smallest fixed point.  When the exact offspring
    mean is at most 1 the answer is ``psi = 1`` and no iteration is done.

    A result with ``converged=False`` means the cap was reached; callers
    must not treat its ``psi`` as a root.
    """
    if not 0 < tol < 1e-6:
        raise ValueError(f"tol must satisfy 0 < tol < 1e-6, got {tol}")
    if offspring_mean(params) <= 1:
        return FixedPointResult(psi=1.0, iterations=0, residual=0.0, converged=True)

    coeffs = _coefficients(params)
    s = 0.0
    for n in range(1, max_iter + 1):
        nxt = _horner(coeffs, s)
        step = nxt - s
        s = nxt
        if abs(step) < tol:
            residual = abs(_horner(coeffs, s) - s)
            return FixedPointResult(psi=s, iterations=n, residual=residual,
                                    converged=residual <= tol)
    residual = abs(_horner(coeffs, s) - s)
    log.warning("fixed point for %s not converged after %d iterations", params, max_iter)
    return FixedPointResult(psi=s, iterations=max_iter, residual=residual, converged=False)


def survival_probability(params: ModelParams, tol: float = DEFAULT_TOL,
                         max_iter: int = MAX_ITER) -> float:
    """``theta(d, k) = 1 - E[psi ** N]`` with ``N`` the root's spreader count."""
    fp = extinction_fixed_point(params, tol, max_iter)
    if not fp.converged:
        raise ConvergenceError(
            f"extinction fixed point for d={params.d}, k={params.k} did not converge "
            f"(residual {fp.residual:.3e} after {fp.iterations} iterations)"
        )
    if fp.psi == 1.0:
        return 0.0
    return 1.0 - sum(float(m) * fp.psi ** i for i, m in root_pmf(params))


@dataclass
class ThetaTable:
    d_values: list[int]
    k_values: list[int]
    # values[row][col] for k_values[row], d_values[col]; None where the cell failed
    values: list[list[Optional[float]]]
    errors: dict[tuple[int, int], str] = field(default_factory=dict)

    def cell(self, d: int, k: int) -> Optional[float]:
        return self.values[self.k_values.index(k)][self.d_values.index(d)]

    def formatted(self) -> list[list[str]]:
        return [[format_theta(v) if v is not None else "error" for v in row] for row in self.values]


def format_theta(value: float) -> str:
    return f"{value:.6f}"


def _cell(d: int, k: int, tol: float, max_iter: int) -> tuple[Optional[float], Optional[str]]:
    try:
        return survival_probability(ModelParams(d, k), tol, max_iter), None
    except (ValueError, TypeError, ConvergenceError) as exc:
        return None, str(exc)


def theta_table(d_values: Sequence[int], k_values: Sequence[int], tol: float = DEFAULT_TOL,
                max_iter: int = MAX_ITER) -> ThetaTable:
    """Grid of survival probabilities; a failing cell is recorded, not raised."""
    d_values, k_values = list(d_values), list(k_values)
    cells = [(d, k) for k in k_values for d in d_values]
    results = [_cell(d, k, tol, max_iter) for d, k in cells]

    values: list[list[Optional[float]]] = []
    errors = {}
    it = iter(zip(cells, results))
    for _ in k_values:
        row = []
        for _ in d_values:
            (d, k), (value, err) = next(it)
            row.append(value)
            if err is not None:
                errors[(d, k)] = err
        values.append(row)
    return ThetaTable(d_values, k_values, values, errors)
