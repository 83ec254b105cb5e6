# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled sweep kernel, the hot loop of the entropy-descent search.

Keep the scan order, acceptance rule, and floating-point evaluation order in
lockstep with _sweep_py; the test suite compares the two engines swap for
swap. No fast-math: the delta sums must match the Python kernel bit for bit.
"""

from libc.math cimport INFINITY
from libc.stdint cimport int8_t, int32_t, int64_t

COMPILED = True


def run_sweeps(const int32_t[:, ::1] codes,
               int8_t[::1] flags,
               int64_t[:, ::1] counts,
               int64_t[::1] outliers,
               const double[::1] f_table,
               double objective,
               double epsilon,
               int64_t max_sweeps):
    """Run improvement sweeps until none of the candidate swaps helps.

    Same contract as the pure-Python twin: ``flags``, ``counts`` and
    ``outliers`` (kept sorted ascending) are updated in place; returns
    (objective, sweeps, swaps, trace, capped).
    """
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t m = codes.shape[1]
    cdef Py_ssize_t k = outliers.shape[0]
    cdef Py_ssize_t t, j, idx, pos
    cdef int64_t o, best_o
    cdef int32_t a, b
    cdef int64_t ca, cb
    cdef double d, best
    cdef int64_t sweeps = 0
    cdef int64_t swaps = 0
    cdef bint moved, capped = False
    trace = []

    while True:
        moved = False
        for t in range(n):
            if flags[t]:
                continue
            best = INFINITY
            best_o = -1
            for idx in range(k):
                o = outliers[idx]
                d = 0.0
                for j in range(m):
                    a = codes[t, j]
                    b = codes[o, j]
                    if a != b:
                        ca = counts[j, a]
                        cb = counts[j, b]
                        d += f_table[ca - 1] - f_table[ca] + f_table[cb + 1] - f_table[cb]
                if d < best:
                    best = d
                    best_o = o
            if best_o >= 0 and best < -epsilon:
                for j in range(m):
                    counts[j, codes[t, j]] -= 1
                    counts[j, codes[best_o, j]] += 1
                flags[t] = 1
                flags[best_o] = 0
                # replace best_o with t, keeping the outlier list sorted
                pos = 0
                while outliers[pos] != best_o:
                    pos += 1
                while pos < k - 1 and outliers[pos + 1] < t:
                    outliers[pos] = outliers[pos + 1]
                    pos += 1
                while pos > 0 and outliers[pos - 1] > t:
                    outliers[pos] = outliers[pos - 1]
                    pos -= 1
                outliers[pos] = t
                objective += best
                trace.append(objective)
                swaps += 1
                moved = True
        sweeps += 1
        if not moved:
            break
        if max_sweeps and sweeps >= max_sweeps:
            capped = True
            break

    return objective, int(sweeps), int(swaps), trace, capped
