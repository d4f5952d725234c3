"""Single-run simulators of the rumor process on the tree."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Optional

from ..distributions import ModelParams
from . import _pykernels
from .tree import TruncatedTree

try:
    if os.environ.get("RUMORTREE_PURE_PYTHON"):
        raise ImportError("pure Python kernels requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

#: backend used when none is requested explicitly
BACKEND = "compiled" if _compiled is not None else "python"
DEFAULT_VERTEX_BUDGET = 1_000_000
ENGINES = ("jumpchain", "genealogy")


class VertexBudgetExceeded(RuntimeError):
    """A run materialised more vertices than its budget allows."""


def kernels(backend: Optional[str] = None):
    backend = backend or BACKEND
    if backend == "python":
        return _pykernels
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available in this installation")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class SimOutcome:
    """Summary of one run.

    ``generation_counts[n]`` is the number of vertices at depth ``n + 1``
    that were ever informed, so ``generation_counts[0]`` is the root's
    spreader count.  ``offspring_counts[i]`` counts non-root spreaders
    that acted to completion and informed exactly ``i`` children.
    """

    generation_counts: tuple[int, ...]
    offspring_counts: tuple[int, ...]
    contacts: int
    depth_limit: Optional[int]
    extinction_time: Optional[float] = None

    @property
    def max_depth_reached(self) -> int:
        return len(self.generation_counts)

    @property
    def informed_total(self) -> int:
        return sum(self.generation_counts)

    @property
    def root_offspring(self) -> int:
        return self.generation_counts[0]

    @property
    def censored(self) -> bool:
        """Boundary reached: some vertex at ``depth_limit`` was informed."""
        return self.depth_limit is not None and self.max_depth_reached >= self.depth_limit

    def reached(self, depth: int) -> bool:
        return self.max_depth_reached >= depth


def _validate(params: ModelParams, depth_limit: Optional[int], vertex_budget: int) -> int:
    if not isinstance(params, ModelParams):
        raise TypeError("params must be a ModelParams")
    if depth_limit is not None and depth_limit < 1:
        raise ValueError(f"depth_limit must be >= 1 or None, got {depth_limit}")
    if vertex_budget < 1:
        raise ValueError(f"vertex_budget must be >= 1, got {vertex_budget}")
    return -1 if depth_limit is None else depth_limit


def genealogy_run(params: ModelParams, depth_limit: Optional[int], rng_seed: int,
                  vertex_budget: int = DEFAULT_VERTEX_BUDGET,
                  backend: Optional[str] = None) -> SimOutcome:
    """Sample the spreaders' genealogy generation by generation.

    On a tree a spreader's contact sequence only involves its own
    neighbours, whose states only it can change, so each spreader's
    offspring can be drawn independently.  ``depth_limit=None`` runs to
    extinction.
    """
    limit = _validate(params, depth_limit, vertex_budget)
    status, counts, hist, contacts = kernels(backend).genealogy(
        params.d, params.k, limit, rng_seed, vertex_budget)
    if status:
        raise VertexBudgetExceeded(f"more than {vertex_budget} vertices informed")
    return SimOutcome(tuple(counts), tuple(hist), contacts, depth_limit)


def gillespie_run(params: ModelParams, depth_limit: Optional[int], rng_seed: int,
                  vertex_budget: int = DEFAULT_VERTEX_BUDGET, timed: bool = False,
                  backend: Optional[str] = None, keep_tree: bool = False,
                  observer: Optional[Callable[[int, int, int], None]] = None):
    """Simulate the embedded jump chain of the full process.

    Each step picks an active spreader uniformly (all share total rate
    ``d + 1``) and one of its neighbour slots uniformly, then resolves the
    contact.  Vertices at ``depth_limit`` are informed but never act.

    With ``keep_tree`` returns ``(outcome, tree)``.  An ``observer`` forces
    the Python backend.
    """
    limit = _validate(params, depth_limit, vertex_budget)
    if observer is not None:
        result = _pykernels.jumpchain(params.d, params.k, limit, rng_seed, vertex_budget,
                                      timed, keep_tree, observer)
    else:
        result = kernels(backend).jumpchain(params.d, params.k, limit, rng_seed,
                                            vertex_budget, timed, keep_tree)
    status, counts, hist, contacts, elapsed, snapshot = result
    if status:
        raise VertexBudgetExceeded(f"more than {vertex_budget} vertices materialised")
    outcome = SimOutcome(tuple(counts), tuple(hist), contacts, depth_limit,
                         elapsed if timed else None)
    if keep_tree:
        return outcome, TruncatedTree.from_arrays(params.d, *snapshot)
    return outcome


def run(params: ModelParams, engine: str, depth_limit: Optional[int], rng_seed: int,
        vertex_budget: int = DEFAULT_VERTEX_BUDGET, backend: Optional[str] = None) -> SimOutcome:
    if engine == "genealogy":
        return genealogy_run(params, depth_limit, rng_seed, vertex_budget, backend=backend)
    if engine == "jumpchain":
        return gillespie_run(params, depth_limit, rng_seed, vertex_budget, backend=backend)
    raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
