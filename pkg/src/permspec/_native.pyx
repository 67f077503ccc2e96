# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled permutation-null kernel.

For each permutation row: gather the centered values, run a direct
half-spectrum transform against precomputed trig tables, and keep the
largest squared modulus.  O(n^2) per row, but branch-free contiguous
loops that vectorise well at the series lengths the test is used at.
"""

import numpy as np

from libc.math cimport sqrt
from libc.stdint cimport int64_t


def null_msi(const double[::1] centered,
             const int64_t[:, ::1] perms,
             const double[:, ::1] cos_table,
             const double[:, ::1] sin_table,
             double scale,
             double[::1] out):
    """Fill ``out[m]`` with the MSI of ``centered[perms[m]]`` times ``scale``."""
    cdef Py_ssize_t n_rows = perms.shape[0]
    cdef Py_ssize_t n = perms.shape[1]
    cdef Py_ssize_t n_freq = cos_table.shape[0]
    cdef Py_ssize_t m, k, t
    cdef double re, im, power, best, v

    if centered.shape[0] != n:
        raise ValueError("centered length does not match permutation width")
    if out.shape[0] != n_rows:
        raise ValueError("output length does not match permutation count")
    if cos_table.shape[1] != n or sin_table.shape[1] != n:
        raise ValueError("trig tables do not match the series length")

    gathered_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] gathered = gathered_arr

    for m in range(n_rows):
        for t in range(n):
            gathered[t] = centered[perms[m, t]]
        best = 0.0
        for k in range(n_freq):
            re = 0.0
            im = 0.0
            for t in range(n):
                v = gathered[t]
                re += v * cos_table[k, t]
                im += v * sin_table[k, t]
            power = re * re + im * im
            if power > best:
                best = power
        out[m] = sqrt(best) * scale
