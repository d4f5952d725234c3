"""Pure-Python simulation kernels.

Reference implementation and fallback for ``_kernels.pyx``.  Both modules
consume the random stream in the same order and must return identical
tuples for identical arguments.

``depth_limit < 0`` means no depth limit.  Status ``0`` is a finished
run, ``1`` a run that exceeded ``vertex_budget`` materialised vertices.
"""

from math import log1p

from .rng import SplitMix64
from .tree import TruncatedTree

OK = 0
BUDGET_EXCEEDED = 1


def genealogy(d, k, depth_limit, seed, vertex_budget):
    """Sample spreaders generation by generation.

    Each spreader draws uniform neighbour slots until its k-th stifling
    experience.  Informed slots are relabelled to the lowest indices, so
    a draw below the informed count is a repeat (stifling) and any other
    draw informs a new child.  Non-root spreaders start with one informed
    slot, their parent.

    Returns ``(status, generation_counts, offspring_hist, contacts)``.
    """
    rng = SplitMix64(seed)
    below = rng.below
    slots = d + 1
    generation_counts = []
    hist = [0] * slots
    contacts = 0
    vertices = 1
    current = 1
    depth = 0
    while current and depth != depth_limit:
        start = 0 if depth == 0 else 1
        nxt = 0
        for _ in range(current):
            informed = start
            stifles = 0
            while True:
                contacts += 1
                if below(slots) < informed:
                    stifles += 1
                    if stifles == k:
                        break
                else:
                    informed += 1
            children = informed - start
            if depth:
                hist[children] += 1
            nxt += children
            vertices += children
            if vertices > vertex_budget:
                return BUDGET_EXCEEDED, generation_counts, hist, contacts
        depth += 1
        if nxt:
            generation_counts.append(nxt)
        current = nxt
    return OK, generation_counts, hist, contacts


def jumpchain(d, k, depth_limit, seed, vertex_budget, timed=False, keep_tree=False,
              observer=None):
    """Embedded jump chain of the contact process on a lazily grown tree.

    Every active spreader contacts each of its ``d + 1`` neighbours at
    rate 1, so each step picks an active spreader uniformly and then one
    of its neighbour slots uniformly.  Spreaders at ``depth_limit`` are
    passive: they are informed but never act.  With ``timed`` the
    exponential holding times are accumulated as well.

    ``observer(vertex, old_state, new_state)`` is called on every state
    change.

    Returns ``(status, generation_counts, offspring_hist, contacts,
    elapsed, tree)`` where ``tree`` is ``(parent, depth, state)`` lists or
    ``None``.
    """
    rng = SplitMix64(seed)
    below = rng.below
    slots = d + 1
    tree = TruncatedTree(d)
    state = tree.state
    active = [0]
    pos = [0]
    generation_counts = []
    hist = [0] * slots
    contacts = 0
    elapsed = 0.0
    status = OK
    if observer is not None:
        observer(0, -1, 0)
    while active:
        n_active = len(active)
        if timed:
            elapsed += -log1p(-rng.uniform()) / (n_active * slots)
        v = active[below(n_active)]
        slot = below(slots)
        contacts += 1
        target = tree.neighbour(v, slot)
        if target < 0:
            w = tree.inform(v, slot)
            dep = tree.depth[w]
            if dep > len(generation_counts):
                generation_counts.append(0)
            generation_counts[dep - 1] += 1
            if observer is not None:
                observer(w, -1, 0)
            if dep != depth_limit:
                pos.append(n_active)
                active.append(w)
            else:
                pos.append(-1)
            if len(tree) > vertex_budget:
                status = BUDGET_EXCEEDED
                break
        else:
            new = state[v] + 1
            if observer is not None:
                observer(v, state[v], new)
            state[v] = new
            if new == k:
                i = pos[v]
                last = active.pop()
                if last != v:
                    active[i] = last
                    pos[last] = i
                pos[v] = -1
                if v:
                    hist[tree.nchildren[v]] += 1
    snapshot = (tree.parent, tree.depth, tree.state) if keep_tree else None
    return status, generation_counts, hist, contacts, elapsed, snapshot
