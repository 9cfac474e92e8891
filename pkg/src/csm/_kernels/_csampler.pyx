# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trajectory sampling kernel; mirrors ``_pysampler`` bit for bit."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t splitmix64(uint64_t x) noexcept nogil:
    cdef uint64_t z = x + GOLDEN
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def sample_codes(double[:, :, ::1] cdf, seed, Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t n_steps = cdf.shape[0]
    cdef Py_ssize_t n_out = cdf.shape[2]
    cdef Py_ssize_t t, s, m
    cdef int64_t prev, code
    cdef uint64_t key, z
    cdef double u
    cdef uint64_t base = splitmix64(<uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF))
    out = np.empty(stop - start, dtype=np.int64)
    cdef int64_t[::1] out_v = out
    with nogil:
        for t in range(start, stop):
            key = splitmix64(base ^ <uint64_t>t)
            prev = 0
            code = 0
            for s in range(n_steps):
                z = splitmix64(key + <uint64_t>s * GOLDEN)
                u = <double>(z >> 11) * INV_2_53
                m = 0
                while m < n_out - 1 and u >= cdf[s, prev, m]:
                    m += 1
                code = code * n_out + m
                prev = m
            out_v[t - start] = code
    return out
