"""Exact laws of the number of spreaders one spreader creates.

Every mass is a :class:`fractions.Fraction`; float views are derived on
demand and never fed back into exact computations.

A spreader on the tree contacts its ``d + 1`` neighbours uniformly at
random.  A contact with an ignorant neighbour informs it, a contact with
an informed neighbour is a stifling experience, and the ``k``-th stifling
experience turns the spreader into a stifler.  The root starts with no
informed neighbour; any other spreader starts with its parent informed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Union

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class ModelParams:
    """Tree degree ``d`` (every non-root vertex has ``d`` children) and
    stifling threshold ``k``."""

    d: int
    k: int = 1

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int):
            raise TypeError(f"d must be an integer, got {self.d!r}")
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise TypeError(f"k must be an integer, got {self.k!r}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got d={self.d}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got k={self.k}")


@dataclass(frozen=True)
class ExactPmf:
    """Finite-support pmf on the non-negative integers with rational masses.

    ``deficit`` is the mass missing from the support, non-zero only for
    defective laws such as a truncated progeny distribution.
    """

    entries: tuple[tuple[int, Fraction], ...]
    deficit: Fraction = Fraction(0)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple((int(v), Fraction(m)) for v, m in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "deficit", Fraction(self.deficit))
        values = [v for v, _ in entries]
        if any(v < 0 for v in values):
            raise ValueError("support values must be non-negative")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("support values must be strictly increasing")
        if any(m < 0 for _, m in entries):
            raise ValueError("masses must be non-negative")
        if self.deficit < 0 or self.total() + self.deficit != 1:
            raise ValueError(
                f"masses sum to {self.total()} with deficit {self.deficit}; expected 1"
            )
        object.__setattr__(self, "_index", dict(entries))

    @classmethod
    def from_masses(cls, masses: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]],
                    defective: bool = False) -> "ExactPmf":
        items = sorted(dict(masses).items())
        total = sum((m for _, m in items), Fraction(0))
        deficit = 1 - total if defective else Fraction(0)
        return cls(tuple(items), deficit)

    def __getitem__(self, value: int) -> Fraction:
        return self._index.get(value, Fraction(0))

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.entries)

    @property
    def defective(self) -> bool:
        return self.deficit != 0

    def total(self) -> Fraction:
        return sum((m for _, m in self.entries), Fraction(0))

    def mean(self) -> Fraction:
        return sum((v * m for v, m in self.entries), Fraction(0))

    def as_float(self) -> dict[int, float]:
        return {v: float(m) for v, m in self.entries}

    def pgf(self, s: Number) -> Number:
        """Evaluate ``sum_i P(i) s**i``; exact when ``s`` is rational."""
        if isinstance(s, (int, Fraction)):
            return sum((m * Fraction(s) ** v for v, m in self.entries), Fraction(0))
        return _horner([float(self[i]) for i in range(self.support[-1] + 1)], float(s))

    def tv_distance(self, other: Mapping[int, float]) -> float:
        """Total variation distance to an (empirical) distribution."""
        keys = set(self._index) | set(other)
        return 0.5 * sum(abs(float(self[v]) - float(other.get(v, 0.0))) for v in keys)


def _horner(coeffs: list[float], s: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def _check_index(name: str, value: int, lowest: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < lowest:
        raise ValueError(f"{name} must be >= {lowest}, got {value}")


def _nested_product_sum(top: int, k: int) -> int:
    # Sum over 1 <= m_1 <= ... <= m_{k-1} <= top of m_1 * ... * m_{k-1},
    # by suffix sums g_j(lo) = sum_{m=lo}^{top} m * g_{j-1}(m), g_0 = 1.
    g = [1] * (top + 2)
    for _ in range(k - 1):
        nxt = [0] * (top + 2)
        acc = 0
        for lo in range(top, 0, -1):
            acc += lo * g[lo]
            nxt[lo] = acc
        g = nxt
    return g[1]


def stifling_sum_S(i: int, k: int) -> int:
    """Nested stifling sum with upper limit ``i + 1`` (non-root spreaders).

    Equals 1 for ``k = 1`` (empty product).
    """
    _check_index("i", i, 0)
    _check_index("k", k, 1)
    return _nested_product_sum(i + 1, k)


def stifling_sum_Sstar(i: int, k: int) -> int:
    """Nested stifling sum with upper limit ``i`` (the root)."""
    _check_index("i", i, 1)
    _check_index("k", k, 1)
    return _nested_product_sum(i, k)


@lru_cache(maxsize=256)
def offspring_pmf(params: ModelParams) -> ExactPmf:
    """Law of the number of new spreaders a non-root spreader creates.

    ``P(i) = C(d, i) (i+1)! S(i, k) / (d+1)**(i+k)`` for ``i = 0..d``.
    """
    d, k = params.d, params.k
    masses = {
        i: Fraction(comb(d, i) * factorial(i + 1) * stifling_sum_S(i, k), (d + 1) ** (i + k))
        for i in range(d + 1)
    }
    return ExactPmf.from_masses(masses)


@lru_cache(maxsize=256)
def root_pmf(params: ModelParams) -> ExactPmf:
    """Law of the number of spreaders the root creates, support ``1..d+1``."""
    d, k = params.d, params.k
    masses = {
        i: Fraction(i * factorial(i) * comb(d + 1, i) * stifling_sum_Sstar(i, k), (d + 1) ** (i + k))
        for i in range(1, d + 2)
    }
    return ExactPmf.from_masses(masses)


def offspring_mean(params: ModelParams) -> Fraction:
    return offspring_pmf(params).mean()


def offspring_pgf(params: ModelParams, s: Number) -> Number:
    """Offspring generating function on ``[0, 1]``.

    Rational ``s`` gives an exact :class:`~fractions.Fraction`, float ``s``
    a float computed by Horner's rule.
    """
    if not 0 <= s <= 1:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    return offspring_pmf(params).pgf(s)
