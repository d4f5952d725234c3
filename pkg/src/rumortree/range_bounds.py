"""Bounds on the extinction time and spreading range for ``d = 2, k = 1``.

The offspring pgf ``phi(s) = (2s^2 + 4s + 3) / 9`` is sandwiched between
two fractional linear generating functions ``L <= phi <= U`` with the same
value and slope at ``s = 1``.  Fractional linear maps are closed under
composition, so the n-fold iterates ``L_n(0) <= P(T_ext <= n) <= U_n(0)``
have closed forms.  Everything here is specific to ``d = 2, k = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .distributions import ModelParams, offspring_pmf, root_pmf

Number = Union[float, Fraction]

PARAMS = ModelParams(2, 1)
MEAN = Fraction(8, 9)
_Q = 8 / 9


@dataclass(frozen=True)
class FractionalLinearGF:
    """``s -> a + b s / (c - s)``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __call__(self, s: Number) -> Number:
        if isinstance(s, (int, Fraction)):
            s = Fraction(s)
            return self.a + self.b * s / (self.c - s)
        return float(self.a) + float(self.b) * s / (float(self.c) - s)

    def derivative(self, s: Number) -> Number:
        if isinstance(s, (int, Fraction)):
            s = Fraction(s)
            return self.b * self.c / (self.c - s) ** 2
        return float(self.b) * float(self.c) / (float(self.c) - s) ** 2

    def iterate(self, n: int, s: Number = 0.0) -> Number:
        """n-fold composition evaluated at ``s``."""
        for _ in range(n):
            s = self(s)
        return s


LOWER_GF = FractionalLinearGF(Fraction(13, 45), Fraction(128, 45), Fraction(5))
UPPER_GF = FractionalLinearGF(Fraction(1, 3), Fraction(2), Fraction(4))

# mixing over the root's spreader count: P(R <= n) = sum_i P(N=i) P(T_ext <= n)^i
_ROOT = root_pmf(PARAMS)


def offspring_gf(s: Number) -> Number:
    return offspring_pmf(PARAMS).pgf(s)


def h_criterion(s: Number) -> Number:
    """``phi'(1) phi'(s) (1-s)^2 - (1 - phi(s))^2``; negative on ``[0, 1)``.

    Exact for rational ``s``.
    """
    if not 0 <= s <= 1:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    if isinstance(s, (int, Fraction)):
        s = Fraction(s)
        slope = Fraction(4) * (s + 1) / 9
        return MEAN * slope * (1 - s) ** 2 - (1 - (2 * s * s + 4 * s + 3) / Fraction(9)) ** 2
    slope = 4.0 * (s + 1) / 9
    return (8 / 9) * slope * (1 - s) ** 2 - (1 - (2 * s * s + 4 * s + 3) / 9) ** 2


def _alpha(a: float, n: int) -> float:
    q = _Q ** n
    return a * (1 - q) / (a - q)


def extinction_time_cdf_bounds(n: int) -> tuple[float, float]:
    """Bounds on ``P(T_ext <= n)`` for the single-ancestor process."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _alpha(13 / 9, n), _alpha(4 / 3, n)


def mix_over_root(p: Number) -> Number:
    """``sum_i P(N = i) p**i``, increasing on ``[0, 1]``."""
    if isinstance(p, (int, Fraction)):
        return sum((m * Fraction(p) ** i for i, m in _ROOT), Fraction(0))
    return sum(float(m) * p ** i for i, m in _ROOT)


def range_cdf_bounds(n: int) -> tuple[float, float]:
    """Bounds on ``P(R <= n)`` where ``R`` is the deepest level informed."""
    lo, hi = extinction_time_cdf_bounds(n)
    return mix_over_root(lo), mix_over_root(hi)


def extinction_time_cdf(n: int) -> float:
    """``P(T_ext <= n) = phi_n(0)`` by direct iteration of the pgf."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    s = 0.0
    for _ in range(n):
        s = offspring_gf(s)
    return s


def range_cdf(n: int) -> float:
    return mix_over_root(extinction_time_cdf(n))


@dataclass(frozen=True)
class SeriesEnclosure:
    lower: float
    upper: float
    terms: int


@dataclass(frozen=True)
class ExpectedRangeBounds:
    lower: float
    upper: float
    # (power p, which bound) -> enclosure of sum_n (1 - alpha(n))^p;
    # "lower" series uses alpha_2 (smaller tails), "upper" uses alpha_1
    series: dict[tuple[int, str], SeriesEnclosure]

    def constants(self) -> dict[str, float]:
        """The six series values in the direction each is used."""
        out = {}
        for p in (1, 2, 3):
            out[f"lower_p{p}"] = self.series[(p, "lower")].lower
            out[f"upper_p{p}"] = self.series[(p, "upper")].upper
        return out


def _tail_series(a: float, p: int, tol: float) -> SeriesEnclosure:
    # terms t_n = ((a - 1) q / (a - q))^p with q = (8/9)^n; t_{n+1} <= (8/9) t_n
    # so the tail after the last summed term t is at most 8 t
    total = 0.0
    n = 0
    while True:
        q = _Q ** n
        t = ((a - 1) * q / (a - q)) ** p
        total += t
        n += 1
        if t < tol:
            return SeriesEnclosure(total, total + 8 * t, n)


def expected_range_bounds(series_tol: float = 1e-12) -> ExpectedRangeBounds:
    """Enclosure of ``E[R] = sum_n P(R > n)``.

    ``P(R > n) = (17/9) t - (10/9) t^2 + (2/9) t^3`` with
    ``t = P(T_ext > n)``; each power is bounded separately using the
    series with the adverse sign.
    """
    if not 0 < series_tol <= 1e-12:
        raise ValueError(f"series_tol must satisfy 0 < tol <= 1e-12, got {series_tol}")
    series = {}
    for p in (1, 2, 3):
        series[(p, "lower")] = _tail_series(4 / 3, p, series_tol)
        series[(p, "upper")] = _tail_series(13 / 9, p, series_tol)
    lower = (17 / 9) * series[(1, "lower")].lower - (10 / 9) * series[(2, "upper")].upper \
        + (2 / 9) * series[(3, "lower")].lower
    upper = (17 / 9) * series[(1, "upper")].upper - (10 / 9) * series[(2, "lower")].lower \
        + (2 / 9) * series[(3, "upper")].upper
    return ExpectedRangeBounds(lower, upper, series)
