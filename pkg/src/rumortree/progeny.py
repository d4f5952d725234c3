"""Total progeny of the rumor: how many individuals ever hear it.

``T`` counts every informed vertex except the initial spreader, so the
final number of stiflers is ``S_inf = T + 1``.  Given ``N = n`` spreaders
created by the root, ``T`` is the total progeny of a Galton-Watson process
with ``n`` ancestors, and the hitting-time identity gives

    P(T = i | N = n) = (n / i) P(X_1 + ... + X_i = i - n),   i >= n.

The sums of iid offspring counts are read off exact integer powers of the
offspring pmf numerator polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

import numpy as np

from .distributions import ExactPmf, ModelParams, offspring_mean, offspring_pmf, root_pmf


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients, index = power."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, power: int) -> int:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return 0

    def __call__(self, s):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * s + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(tuple(_mul(self.coefficients, other.coefficients)))

    def __pow__(self, n: int) -> "IntPolynomial":
        return self.truncated_pow(n, None)

    def truncated_pow(self, n: int, max_degree: int | None) -> "IntPolynomial":
        """``self ** n`` keeping only powers up to ``max_degree``."""
        if n < 0:
            raise ValueError("negative power")
        result: list[int] = [1]
        base = list(self.coefficients)
        while n:
            if n & 1:
                result = _mul(result, base, max_degree)
            n >>= 1
            if n:
                base = _mul(base, base, max_degree)
        return IntPolynomial(tuple(result))


def _mul(a: Sequence[int], b: Sequence[int], max_degree: int | None = None) -> list[int]:
    if not a or not b:
        return []
    top = len(a) + len(b) - 2
    if max_degree is not None:
        top = min(top, max_degree)
    out = [0] * (top + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > top:
            continue
        for j in range(min(len(b), top - i + 1)):
            out[i + j] += ai * b[j]
    return out


def offspring_polynomial(params: ModelParams) -> tuple[IntPolynomial, int]:
    """Integer polynomial ``A`` and denominator ``D`` with ``pgf = A(s) / D``,
    reduced by the content of ``A``.  For ``d=2, k=1`` this is
    ``(2s^2 + 4s + 3, 9)``."""
    pmf = offspring_pmf(params)
    denom = reduce(lambda a, b: a * b // gcd(a, b), (m.denominator for _, m in pmf), 1)
    coeffs = [int(pmf[i] * denom) for i in range(params.d + 1)]
    g = reduce(gcd, coeffs)
    return IntPolynomial(tuple(c // g for c in coeffs)), denom // g


def iid_sum_coefficient(params: ModelParams, i: int, j: int) -> Fraction:
    """``P(X_1 + ... + X_i = j)`` for iid offspring counts, exactly."""
    if i < 1:
        raise ValueError(f"i must be >= 1, got {i}")
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    poly, denom = offspring_polynomial(params)
    if j > poly.degree * i:
        return Fraction(0)
    return Fraction(poly.truncated_pow(i, j)[j], denom ** i)


def progeny_pmf(params: ModelParams, i_max: int = 200) -> ExactPmf:
    """``P(T = i)`` for ``i = 1..i_max`` as a defective exact pmf.

    The recorded deficit is ``P(T > i_max)``, which tends to the survival
    probability as ``i_max`` grows.  Cost is quadratic in ``i_max``; for
    ``i_max`` in the thousands on supercritical parameters prefer
    :func:`progeny_pmf_float`.
    """
    if i_max < 1:
        raise ValueError(f"i_max must be >= 1, got {i_max}")
    poly, denom = offspring_polynomial(params)
    roots = [(n, m) for n, m in root_pmf(params)]
    masses: dict[int, Fraction] = {}
    # power[j] = [s^j] A(s)^i, kept up to degree i_max - 1
    power = [1]
    base = list(poly.coefficients)
    for i in range(1, i_max + 1):
        power = _mul(power, base, i_max - 1)
        total = Fraction(0)
        for n, mass in roots:
            if i < n:
                break
            c = power[i - n] if i - n < len(power) else 0
            if c:
                total += mass * Fraction(n * c, i * denom ** i)
        masses[i] = total
    return ExactPmf.from_masses(masses, defective=True)


def progeny_pmf_float(params: ModelParams, i_max: int) -> np.ndarray:
    """Float version of :func:`progeny_pmf`; entry ``i - 1`` is ``P(T = i)``.

    Convolves the offspring pmf in double precision, linear memory and
    ``O(i_max^2 d)`` work.
    """
    if i_max < 1:
        raise ValueError(f"i_max must be >= 1, got {i_max}")
    off = np.array([float(m) for _, m in offspring_pmf(params)])
    roots = [(n, float(m)) for n, m in root_pmf(params)]
    out = np.zeros(i_max)
    dist = np.array([1.0])
    for i in range(1, i_max + 1):
        dist = np.convolve(dist, off)[:i_max]
        total = 0.0
        for n, mass in roots:
            if i >= n and i - n < dist.size:
                total += mass * n / i * dist[i - n]
        out[i - 1] = total
    return out


@dataclass(frozen=True)
class ProgenyMeans:
    informed: Fraction   # E[T], root excluded
    stiflers: Fraction   # E[S_inf] = E[T] + 1


def progeny_mean(params: ModelParams) -> ProgenyMeans:
    """Exact ``E[T] = E[N] / (1 - mu)`` and ``E[S_inf] = E[T] + 1``.

    Only defined for subcritical parameters (offspring mean ``mu < 1``).
    """
    mu = offspring_mean(params)
    if mu >= 1:
        raise ValueError(
            f"progeny mean is infinite for d={params.d}, k={params.k} (offspring mean {mu} >= 1)"
        )
    informed = root_pmf(params).mean() / (1 - mu)
    return ProgenyMeans(informed=informed, stiflers=informed + 1)
