# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels.

Line-for-line twin of ``_pykernels``: same random stream, same draw
order, same return tuples.
"""

from libc.stdint cimport uint64_t, int64_t, int32_t
from libc.stdlib cimport malloc, realloc, free
from libc.math cimport log1p

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t M2 = 0x94D049BB133111EBULL
cdef double INV_2POW53 = 1.0 / 9007199254740992.0


cdef inline uint64_t next_u64(uint64_t* state) noexcept nogil:
    state[0] += GAMMA
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * M1
    z = (z ^ (z >> 27)) * M2
    return z ^ (z >> 31)


cdef inline uint64_t below(uint64_t* state, uint64_t n) noexcept nogil:
    cdef u128 m = <u128>next_u64(state) * n
    cdef uint64_t low = <uint64_t>m
    cdef uint64_t threshold
    if low < n:
        threshold = (0 - n) % n
        while low < threshold:
            m = <u128>next_u64(state) * n
            low = <uint64_t>m
    return <uint64_t>(m >> 64)


cdef inline double uniform(uint64_t* state) noexcept nogil:
    return (next_u64(state) >> 11) * INV_2POW53


cdef int grow(void** buf, Py_ssize_t* cap, Py_ssize_t need, size_t item) except -1:
    cdef Py_ssize_t new_cap
    cdef void* tmp
    if need <= cap[0]:
        return 0
    new_cap = cap[0] * 2 if cap[0] else 64
    while new_cap < need:
        new_cap *= 2
    tmp = realloc(buf[0], new_cap * item)
    if tmp == NULL:
        raise MemoryError()
    buf[0] = tmp
    cap[0] = new_cap
    return 0


def genealogy(int d, int k, long depth_limit, uint64_t seed, long vertex_budget):
    cdef uint64_t state = seed
    cdef uint64_t slots = d + 1
    cdef long depth = 0
    cdef long long current = 1, nxt, vertices = 1, contacts = 0, j
    cdef int start, informed, stifles, children
    generation_counts = []
    hist = [0] * (d + 1)
    cdef long long* h = <long long*>malloc((d + 1) * sizeof(long long))
    if h == NULL:
        raise MemoryError()
    for j in range(d + 1):
        h[j] = 0
    cdef int status = 0
    try:
        while current and depth != depth_limit:
            start = 0 if depth == 0 else 1
            nxt = 0
            for j in range(current):
                informed = start
                stifles = 0
                while True:
                    contacts += 1
                    if below(&state, slots) < <uint64_t>informed:
                        stifles += 1
                        if stifles == k:
                            break
                    else:
                        informed += 1
                children = informed - start
                if depth:
                    h[children] += 1
                nxt += children
                vertices += children
                if vertices > vertex_budget:
                    status = 1
                    break
            if status:
                break
            depth += 1
            if nxt:
                generation_counts.append(nxt)
            current = nxt
        for j in range(d + 1):
            hist[j] = h[j]
    finally:
        free(h)
    return status, generation_counts, hist, contacts


def jumpchain(int d, int k, long depth_limit, uint64_t seed, long vertex_budget,
              bint timed=False, bint keep_tree=False):
    cdef uint64_t state = seed
    cdef Py_ssize_t width = d + 1
    cdef uint64_t slots = d + 1
    cdef int64_t* parent = NULL
    cdef int32_t* depth = NULL
    cdef int32_t* vstate = NULL
    cdef int32_t* nchildren = NULL
    cdef int64_t* child = NULL
    cdef int64_t* active = NULL
    cdef int64_t* pos = NULL
    cdef long long* levels = NULL
    cdef Py_ssize_t cap_v = 0, cap_c = 0, cap_a = 0, cap_p = 0, cap_l = 0
    cdef Py_ssize_t cap_dep = 0, cap_s = 0, cap_n = 0
    cdef Py_ssize_t n_vertices = 1, n_active = 1, n_levels = 0, s
    cdef int64_t v, w, target, i, last
    cdef uint64_t slot
    cdef int dep, new
    cdef long long contacts = 0
    cdef double elapsed = 0.0
    cdef int status = 0
    hist = [0] * (d + 1)
    try:
        grow(<void**>&parent, &cap_v, 1, sizeof(int64_t))
        grow(<void**>&depth, &cap_dep, 1, sizeof(int32_t))
        grow(<void**>&vstate, &cap_s, 1, sizeof(int32_t))
        grow(<void**>&nchildren, &cap_n, 1, sizeof(int32_t))
        grow(<void**>&child, &cap_c, width, sizeof(int64_t))
        grow(<void**>&active, &cap_a, 1, sizeof(int64_t))
        grow(<void**>&pos, &cap_p, 1, sizeof(int64_t))
        parent[0] = -1
        depth[0] = 0
        vstate[0] = 0
        nchildren[0] = 0
        for s in range(width):
            child[s] = -1
        active[0] = 0
        pos[0] = 0
        while n_active:
            if timed:
                elapsed += -log1p(-uniform(&state)) / (<double>n_active * width)
            v = active[below(&state, <uint64_t>n_active)]
            slot = below(&state, slots)
            contacts += 1
            if v != 0 and slot == 0:
                target = parent[v]
            else:
                target = child[v * width + <Py_ssize_t>slot]
            if target < 0:
                w = n_vertices
                n_vertices += 1
                grow(<void**>&parent, &cap_v, n_vertices, sizeof(int64_t))
                grow(<void**>&depth, &cap_dep, n_vertices, sizeof(int32_t))
                grow(<void**>&vstate, &cap_s, n_vertices, sizeof(int32_t))
                grow(<void**>&nchildren, &cap_n, n_vertices, sizeof(int32_t))
                grow(<void**>&child, &cap_c, n_vertices * width, sizeof(int64_t))
                grow(<void**>&pos, &cap_p, n_vertices, sizeof(int64_t))
                parent[w] = v
                dep = depth[v] + 1
                depth[w] = dep
                vstate[w] = 0
                nchildren[w] = 0
                for s in range(width):
                    child[w * width + s] = -1
                child[v * width + <Py_ssize_t>slot] = w
                nchildren[v] += 1
                if dep > n_levels:
                    grow(<void**>&levels, &cap_l, dep, sizeof(long long))
                    levels[dep - 1] = 0
                    n_levels = dep
                levels[dep - 1] += 1
                if dep != depth_limit:
                    grow(<void**>&active, &cap_a, n_active + 1, sizeof(int64_t))
                    pos[w] = n_active
                    active[n_active] = w
                    n_active += 1
                else:
                    pos[w] = -1
                if n_vertices > vertex_budget:
                    status = 1
                    break
            else:
                new = vstate[v] + 1
                vstate[v] = new
                if new == k:
                    i = pos[v]
                    n_active -= 1
                    last = active[n_active]
                    if last != v:
                        active[i] = last
                        pos[last] = i
                    pos[v] = -1
                    if v:
                        hist[nchildren[v]] += 1
        generation_counts = [levels[s] for s in range(n_levels)]
        snapshot = None
        if keep_tree:
            snapshot = (
                [parent[s] for s in range(n_vertices)],
                [depth[s] for s in range(n_vertices)],
                [vstate[s] for s in range(n_vertices)],
            )
    finally:
        free(parent)
        free(depth)
        free(vstate)
        free(nchildren)
        free(child)
        free(active)
        free(pos)
        free(levels)
    return status, generation_counts, hist, contacts, elapsed, snapshot
