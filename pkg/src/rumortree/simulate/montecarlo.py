"""Independent seeded runs and their order-insensitive aggregation."""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from ..distributions import ModelParams
from .core import DEFAULT_VERTEX_BUDGET, ENGINES, VertexBudgetExceeded, run
from .rng import MASK64, derive_seed


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error; ``stderr`` is ``None`` for n < 2."""

    mean: Optional[float]
    stderr: Optional[float]
    n: int

    def to_dict(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "n": self.n}


def _estimate(hist: Counter) -> Estimate:
    n = sum(hist.values())
    if n == 0:
        return Estimate(None, None, 0)
    s1 = sum(x * c for x, c in hist.items())
    s2 = sum(x * x * c for x, c in hist.items())
    mean = s1 / n
    if n < 2:
        return Estimate(mean, None, n)
    # exact integer numerator keeps the result independent of summation order
    var = (n * s2 - s1 * s1) / (n * (n - 1))
    return Estimate(mean, math.sqrt(var / n), n)


def _proportion(hits: int, n: int) -> Estimate:
    if n == 0:
        return Estimate(None, None, 0)
    p = hits / n
    if n < 2:
        return Estimate(p, None, n)
    return Estimate(p, math.sqrt(p * (1 - p) / n), n)


@dataclass
class MonteCarloSummary:
    d: int
    k: int
    engine: str
    runs: int
    depth_limit: Optional[int]
    base_seed: int
    completed: int = 0
    failures: int = 0
    censored: int = 0
    root_offspring: Counter = field(default_factory=Counter)
    max_depth: Counter = field(default_factory=Counter)
    informed_total: Counter = field(default_factory=Counter)   # uncensored runs only
    offspring: Counter = field(default_factory=Counter)        # pooled non-root spreaders

    def merge(self, other: "MonteCarloSummary") -> None:
        self.completed += other.completed
        self.failures += other.failures
        self.censored += other.censored
        self.root_offspring.update(other.root_offspring)
        self.max_depth.update(other.max_depth)
        self.informed_total.update(other.informed_total)
        self.offspring.update(other.offspring)

    def add(self, outcome) -> None:
        self.completed += 1
        self.root_offspring[outcome.root_offspring] += 1
        self.max_depth[outcome.max_depth_reached] += 1
        if outcome.censored:
            self.censored += 1
        else:
            self.informed_total[outcome.informed_total] += 1
        for i, c in enumerate(outcome.offspring_counts):
            if c:
                self.offspring[i] += c

    @staticmethod
    def _pmf(hist: Counter) -> dict[int, float]:
        n = sum(hist.values())
        return {v: hist[v] / n for v in sorted(hist)} if n else {}

    def root_offspring_pmf(self) -> dict[int, float]:
        return self._pmf(self.root_offspring)

    def offspring_pmf(self) -> dict[int, float]:
        return self._pmf(self.offspring)

    def max_depth_pmf(self) -> dict[int, float]:
        return self._pmf(self.max_depth)

    def informed_total_pmf(self) -> dict[int, float]:
        return self._pmf(self.informed_total)

    def range_cdf(self, n: int) -> Estimate:
        """Empirical ``P(R <= n)``, exact only for ``n < depth_limit``."""
        return _proportion(sum(c for v, c in self.max_depth.items() if v <= n), self.completed)

    def reach_frequency(self, depth: int) -> Estimate:
        return _proportion(sum(c for v, c in self.max_depth.items() if v >= depth), self.completed)

    def survival_to_depth(self) -> Optional[Estimate]:
        """Fraction of runs whose rumor reached ``depth_limit``."""
        if self.depth_limit is None:
            return None
        return _proportion(self.censored, self.completed)

    def survival_to_depth_bracket(self) -> Optional[tuple[float, float]]:
        """Reach frequency over all runs, budget failures counted as misses and as hits.

        Failed runs are mostly large supercritical ones, so dropping them
        biases :meth:`survival_to_depth` low; the bracket shows by how much.
        """
        total = self.completed + self.failures
        if self.depth_limit is None or total == 0:
            return None
        return self.censored / total, (self.censored + self.failures) / total

    def root_offspring_mean(self) -> Estimate:
        return _estimate(self.root_offspring)

    def informed_total_mean(self) -> Estimate:
        return _estimate(self.informed_total)

    def max_depth_mean(self) -> Estimate:
        return _estimate(self.max_depth)

    def to_dict(self) -> dict:
        def hist(c: Counter) -> dict[str, int]:
            return {str(v): c[v] for v in sorted(c)}

        survival = self.survival_to_depth()
        return {
            "d": self.d,
            "k": self.k,
            "engine": self.engine,
            "runs": self.runs,
            "depth_limit": self.depth_limit,
            "seed": self.base_seed,
            "completed": self.completed,
            "failures": self.failures,
            "censored": self.censored,
            "censoring_rate": self.censored / self.completed if self.completed else None,
            "survival_to_depth": survival.to_dict() if survival else None,
            "survival_to_depth_bracket": self.survival_to_depth_bracket(),
            "root_offspring": hist(self.root_offspring),
            "root_offspring_mean": self.root_offspring_mean().to_dict(),
            "offspring": hist(self.offspring),
            "max_depth": hist(self.max_depth),
            "max_depth_mean": self.max_depth_mean().to_dict(),
            "informed_total": hist(self.informed_total),
            "informed_total_mean": self.informed_total_mean().to_dict(),
        }


def _run_chunk(d, k, engine, depth_limit, base_seed, start, stop, vertex_budget, backend):
    params = ModelParams(d, k)
    tally = MonteCarloSummary(d, k, engine, stop - start, depth_limit, base_seed)
    for i in range(start, stop):
        try:
            outcome = run(params, engine, depth_limit, derive_seed(base_seed, i),
                          vertex_budget, backend)
        except VertexBudgetExceeded:
            tally.failures += 1
            continue
        tally.add(outcome)
    return tally


def monte_carlo(params: ModelParams, runs: int, depth_limit: Optional[int] = None,
                engine: str = "genealogy", base_seed: int = 0,
                vertex_budget: int = DEFAULT_VERTEX_BUDGET, jobs: int = 1,
                backend: Optional[str] = None) -> MonteCarloSummary:
    """Run ``runs`` independent simulations.

    Run ``i`` uses the stream ``derive_seed(base_seed, i)``.  Runs that
    exceed the vertex budget are counted in ``failures`` and excluded from
    every statistic.  The summary is identical for any ``jobs``.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    if not 0 <= base_seed <= MASK64:
        raise ValueError("base_seed must be an unsigned 64-bit integer")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    jobs = min(jobs, runs)
    args = (params.d, params.k, engine, depth_limit, base_seed)
    if jobs == 1:
        tally = _run_chunk(*args, 0, runs, vertex_budget, backend)
        tally.runs = runs
        return tally

    bounds = [runs * j // jobs for j in range(jobs + 1)]
    summary = MonteCarloSummary(params.d, params.k, engine, runs, depth_limit, base_seed)
    with ProcessPoolExecutor(jobs) as pool:
        futures = [pool.submit(_run_chunk, *args, lo, hi, vertex_budget, backend)
                   for lo, hi in zip(bounds, bounds[1:])]
        for fut in futures:
            summary.merge(fut.result())
    return summary


def default_jobs() -> int:
    return os.cpu_count() or 1
