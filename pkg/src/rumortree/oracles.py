"""Brute-force reference computations used to cross-check the closed forms."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import prod


def enumerate_spreader_law(d: int, k: int, root: bool) -> dict[int, Fraction]:
    """Law of a spreader's child count by exhaustive contact enumeration.

    Walks every sequence of neighbour slots (each with probability
    ``1/(d+1)``) until the ``k``-th contact with an already informed
    neighbour.  Slot identities are tracked literally; a non-root
    spreader's slot ``0`` is its informed parent.  Cost grows like
    ``(d+1)**(d+k)``, so keep ``d + k`` small.
    """
    slots = d + 1
    step = Fraction(1, slots)
    law: dict[int, Fraction] = {}

    def walk(informed: frozenset, stifles: int, children: int, prob: Fraction) -> None:
        for slot in range(slots):
            if slot in informed:
                if stifles + 1 == k:
                    law[children] = law.get(children, Fraction(0)) + prob * step
                else:
                    walk(informed, stifles + 1, children, prob * step)
            else:
                walk(informed | {slot}, stifles, children + 1, prob * step)

    walk(frozenset() if root else frozenset({0}), 0, 0, Fraction(1))
    return dict(sorted(law.items()))


def nested_sum_by_enumeration(top: int, k: int) -> int:
    """Sum of ``m_1 ... m_{k-1}`` over ``1 <= m_1 <= ... <= m_{k-1} <= top``."""
    return sum(prod(ms) for ms in combinations_with_replacement(range(1, top + 1), k - 1))
