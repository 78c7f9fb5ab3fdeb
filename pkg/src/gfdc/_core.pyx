# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse-degree kernel.

Must stay bit-identical to gfdc._density_py: same (distance, index) sort
order, same libm log calls, same scan. Compiled with -ffp-contract=off so
no FMA contraction can change rounding.
"""

from libc.math cimport INFINITY, log
from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc

import numpy as np


ctypedef struct DistIdx:
    double dist
    Py_ssize_t idx


cdef inline bint _less(DistIdx a, DistIdx b) noexcept nogil:
    if a.dist != b.dist:
        return a.dist < b.dist
    return a.idx < b.idx


cdef void _sort_pairs(DistIdx* buf, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    # quicksort with median-of-three pivot and insertion sort for short runs;
    # keys (dist, idx) are all distinct, so the result is the unique sorted
    # order no matter the algorithm
    cdef Py_ssize_t i, j, mid
    cdef DistIdx pivot, tmp
    while hi - lo > 16:
        mid = lo + (hi - lo) // 2
        if _less(buf[mid], buf[lo]):
            tmp = buf[lo]; buf[lo] = buf[mid]; buf[mid] = tmp
        if _less(buf[hi - 1], buf[lo]):
            tmp = buf[lo]; buf[lo] = buf[hi - 1]; buf[hi - 1] = tmp
        if _less(buf[hi - 1], buf[mid]):
            tmp = buf[mid]; buf[mid] = buf[hi - 1]; buf[hi - 1] = tmp
        pivot = buf[mid]
        i = lo
        j = hi - 1
        while True:
            while _less(buf[i], pivot):
                i += 1
            while _less(pivot, buf[j]):
                j -= 1
            if i >= j:
                break
            tmp = buf[i]; buf[i] = buf[j]; buf[j] = tmp
            i += 1
            j -= 1
        # recurse into the smaller side, iterate on the larger
        if j + 1 - lo < hi - (j + 1):
            _sort_pairs(buf, lo, j + 1)
            lo = j + 1
        else:
            _sort_pairs(buf, j + 1, hi)
            hi = j + 1
    for i in range(lo + 1, hi):
        tmp = buf[i]
        j = i
        while j > lo and _less(tmp, buf[j - 1]):
            buf[j] = buf[j - 1]
            j -= 1
        buf[j] = tmp


def sparse_degree_kernel(const double[:, ::1] d, Py_ssize_t k, Py_ssize_t w):
    """Per-sample neighbor order, optimal radius, k-NN radius and sparse degree.

    Returns ``(neighbor_order, r_star, knn_dist, sd)`` where
    ``neighbor_order`` is (n, n-1) int64 sorted by (distance, index).
    """
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t m = n - 1

    order_arr = np.empty((n, m), dtype=np.int64)
    r_star_arr = np.empty(n, dtype=np.float64)
    knn_arr = np.empty(n, dtype=np.float64)
    sd_arr = np.empty(n, dtype=np.float64)

    cdef int64_t[:, ::1] order = order_arr
    cdef double[::1] r_star = r_star_arr
    cdef double[::1] knn = knn_arr
    cdef double[::1] sd = sd_arr

    cdef DistIdx* buf = <DistIdx*> malloc(m * sizeof(DistIdx))
    if buf == NULL:
        raise MemoryError()

    cdef Py_ssize_t i, j, p, q, pos
    cdef double wd = <double> w
    cdef double r, val, best_val, best_r

    try:
        with nogil:
            for i in range(n):
                pos = 0
                for j in range(n):
                    if j != i:
                        buf[pos].dist = d[i, j]
                        buf[pos].idx = j
                        pos += 1
                _sort_pairs(buf, 0, m)

                best_val = -INFINITY
                best_r = 0.0
                p = 0
                while p < m:
                    r = buf[p].dist
                    q = p
                    while q + 1 < m and buf[q + 1].dist == r:
                        q += 1
                    if r > 0.0:
                        val = log(<double> (q + 2)) - wd * log(r)
                        if val > best_val:
                            best_val = val
                            best_r = r
                    p = q + 1

                for p in range(m):
                    order[i, p] = buf[p].idx
                r_star[i] = best_r
                knn[i] = buf[k - 1].dist
                sd[i] = best_r + buf[k - 1].dist
    finally:
        free(buf)

    return order_arr, r_star_arr, knn_arr, sd_arr
