# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_kernels_py``; same signatures."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def ladder_word_coo(long levels, long n_modes, modes, daggers):
    cdef long k = len(modes)
    cdef long dim = levels ** n_modes
    cdef long[::1] wm = np.ascontiguousarray(modes, dtype=np.int_)[::-1].copy()
    cdef long[::1] wd = np.ascontiguousarray(daggers, dtype=np.int_)[::-1].copy()
    cdef long[::1] strides = np.array([levels ** (n_modes - 1 - i) for i in range(n_modes)], dtype=np.int_)
    cdef long[::1] cur = np.zeros(n_modes, dtype=np.int_)
    cdef cnp.int64_t[::1] rows = np.empty(dim, dtype=np.int64)
    cdef cnp.int64_t[::1] cols = np.empty(dim, dtype=np.int64)
    cdef double[::1] vals = np.empty(dim, dtype=np.float64)
    cdef long col, rem, i, n, m, row, nnz = 0
    cdef double amp
    for col in range(dim):
        rem = col
        for i in range(n_modes):
            cur[i] = rem // strides[i]
            rem = rem - cur[i] * strides[i]
        amp = 1.0
        row = col
        for i in range(k):
            m = wm[i]
            n = cur[m]
            if wd[i]:
                if n == levels - 1:
                    amp = 0.0
                    break
                amp *= sqrt(n + 1.0)
                cur[m] = n + 1
                row += strides[m]
            else:
                if n == 0:
                    amp = 0.0
                    break
                amp *= sqrt(<double>n)
                cur[m] = n - 1
                row -= strides[m]
        if amp != 0.0:
            rows[nnz] = row
            cols[nnz] = col
            vals[nnz] = amp
            nnz += 1
    return (np.asarray(rows[:nnz]).copy(), np.asarray(cols[:nnz]).copy(),
            np.asarray(vals[:nnz]).copy())


def casimir_coefficients(double s, long two_m, long n_max):
    out = np.zeros(n_max + 1, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex two_is = 2j * s
    cdef double complex prev, cur, nxt
    cdef long n
    o[0] = 1.0
    if n_max == 0:
        return out
    o[1] = two_is / sqrt(two_m + 1.0)
    prev = o[0]
    cur = o[1]
    for n in range(1, n_max):
        nxt = (two_is * cur + prev * sqrt(<double>(n * (n + two_m)))) / sqrt(<double>((n + 1) * (n + two_m + 1)))
        o[n + 1] = nxt
        prev = cur
        cur = nxt
    return out
