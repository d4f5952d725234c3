"""Lazily grown arena of tree vertices for the jump-chain simulator."""

from __future__ import annotations

from typing import Sequence

IGNORANT = -1


class TruncatedTree:
    """Vertices materialised on first contact; ``0`` is the root.

    Neighbour slots of a vertex are numbered ``0..d``.  The root's slots
    are all children; for any other vertex slot ``0`` is its parent and
    slots ``1..d`` its children.  A child slot holding ``-1`` is an
    ignorant vertex that has not been created yet.

    Vertex state: ``-1`` ignorant, ``0..k-1`` spreader with that many
    stifling experiences, ``k`` stifler.
    """

    def __init__(self, d: int):
        self.d = d
        self.width = d + 1
        self.parent: list[int] = [-1]
        self.depth: list[int] = [0]
        self.state: list[int] = [0]
        self.nchildren: list[int] = [0]
        self.child: list[int] = [-1] * self.width

    def __len__(self) -> int:
        return len(self.parent)

    def neighbour(self, v: int, slot: int) -> int:
        if v and slot == 0:
            return self.parent[v]
        return self.child[v * self.width + slot]

    def neighbour_state(self, v: int, slot: int) -> int:
        w = self.neighbour(v, slot)
        return IGNORANT if w < 0 else self.state[w]

    def inform(self, v: int, slot: int) -> int:
        """Create the ignorant neighbour behind ``slot`` as a fresh spreader."""
        w = len(self.parent)
        self.parent.append(v)
        self.depth.append(self.depth[v] + 1)
        self.state.append(0)
        self.nchildren.append(0)
        self.child.extend([-1] * self.width)
        self.child[v * self.width + slot] = w
        self.nchildren[v] += 1
        return w

    @classmethod
    def from_arrays(cls, d: int, parent: Sequence[int], depth: Sequence[int],
                    state: Sequence[int]) -> "TruncatedTree":
        """Rebuild a tree from the flat arrays returned by a kernel.

        Slot positions are not preserved; children fill slots in order.
        """
        tree = cls(d)
        tree.parent, tree.depth, tree.state = list(parent), list(depth), list(state)
        n = len(tree.parent)
        tree.nchildren = [0] * n
        tree.child = [-1] * (n * tree.width)
        for w in range(1, n):
            v = tree.parent[w]
            slot = tree.nchildren[v] + (1 if v else 0)
            tree.child[v * tree.width + slot] = w
            tree.nchildren[v] += 1
        return tree

    def level_counts(self) -> list[int]:
        """Informed vertices per depth ``1..max``."""
        counts: list[int] = []
        for dep in self.depth[1:]:
            while len(counts) < dep:
                counts.append(0)
            counts[dep - 1] += 1
        return counts
