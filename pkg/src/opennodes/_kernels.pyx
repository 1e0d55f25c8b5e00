# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernels_py.

Same SplitMix64 stream, same draw order, same floating-point operation
order; outputs must be bit-identical to the pure-Python kernel.
"""
from libc.stdlib cimport free, malloc
from libc.math cimport log2

ctypedef unsigned long long u64

cdef u64 GAMMA = 0x9E3779B97F4A7C15ULL

BACKEND = "cython"


cdef inline u64 mix64(u64 x) noexcept nogil:
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    return x ^ (x >> 31)


cdef inline u64 next_u64(u64* state) noexcept nogil:
    state[0] = state[0] + GAMMA
    return mix64(state[0])


cdef int _profile(int n, u64 seed, int lo, int hi, long* u,
                  int* starts, int* ends, int* sizes) noexcept nogil:
    """Fill u[0..n) with the open-node counts of one random tree."""
    cdef u64 state = seed
    cdef int count = n
    cdef int span = hi - lo + 1
    cdef int i, j, k, m, pos, size, remaining, nsizes, has_merge, node, leaf

    for i in range(n):
        starts[i] = i
        ends[i] = i + 1
        u[i] = 0
    if n == 1:
        u[0] = 1
        return 0

    while count > 1:
        while True:
            nsizes = 0
            remaining = count
            has_merge = 0
            while remaining > 0:
                size = lo + <int>(next_u64(&state) % <u64>span)
                if size > remaining:
                    size = remaining
                sizes[nsizes] = size
                nsizes += 1
                remaining -= size
                if size >= 2:
                    has_merge = 1
            if has_merge:
                break
        k = 0
        pos = 0
        for m in range(nsizes):
            size = sizes[m]
            if size >= 2:
                for j in range(size):
                    node = pos + j
                    for leaf in range(starts[node], ends[node]):
                        u[leaf] += 1 + j
                starts[k] = starts[pos]
                ends[k] = ends[pos + size - 1]
            else:
                if next_u64(&state) & 1:
                    for leaf in range(starts[pos], ends[pos]):
                        u[leaf] += 1
                starts[k] = starts[pos]
                ends[k] = ends[pos]
            pos += size
            k += 1
        count = k
    return 0


def multi_profile(int n, stream_seed, int min_children, int max_children):
    """Open-node counts for one tree drawn from the given stream."""
    cdef u64 seed = <u64>(<unsigned long long>stream_seed)
    cdef long* u = <long*>malloc(n * sizeof(long))
    cdef int* starts = <int*>malloc(n * sizeof(int))
    cdef int* ends = <int*>malloc(n * sizeof(int))
    cdef int* sizes = <int*>malloc(n * sizeof(int))
    cdef int i
    if u == NULL or starts == NULL or ends == NULL or sizes == NULL:
        free(u); free(starts); free(ends); free(sizes)
        raise MemoryError()
    try:
        _profile(n, seed, min_children, max_children, u, starts, ends, sizes)
        return [u[i] for i in range(n)]
    finally:
        free(u); free(starts); free(ends); free(sizes)


def multi_theta_entropy(int n, stream_seed, int min_children, int max_children):
    """Mean count and count-distribution entropy (bits) for one tree."""
    cdef u64 seed = <u64>(<unsigned long long>stream_seed)
    cdef long* u = <long*>malloc(n * sizeof(long))
    cdef int* starts = <int*>malloc(n * sizeof(int))
    cdef int* ends = <int*>malloc(n * sizeof(int))
    cdef int* sizes = <int*>malloc(n * sizeof(int))
    cdef int hist_len = max_children * n + 2
    cdef long* hist = <long*>malloc(hist_len * sizeof(long))
    cdef int i, umax
    cdef long su, value
    cdef double theta, h, p
    if u == NULL or starts == NULL or ends == NULL or sizes == NULL or hist == NULL:
        free(u); free(starts); free(ends); free(sizes); free(hist)
        raise MemoryError()
    try:
        _profile(n, seed, min_children, max_children, u, starts, ends, sizes)
        for i in range(hist_len):
            hist[i] = 0
        su = 0
        umax = 0
        for i in range(n):
            value = u[i]
            su += value
            hist[value] += 1
            if value > umax:
                umax = <int>value
        theta = <double>su / <double>n
        h = 0.0
        for i in range(1, umax + 1):
            if hist[i] > 0:
                p = <double>hist[i] / <double>n
                h -= p * log2(p)
        return theta, h
    finally:
        free(u); free(starts); free(ends); free(sizes); free(hist)
