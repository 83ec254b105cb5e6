"""Pure-Python sweep kernel, the fallback twin of the compiled extension.

Both kernels must keep the same scan order, the same acceptance rule, and the
same left-to-right floating-point evaluation order, so that a search run is
reproducible whichever one is active. Change them together.
"""

from __future__ import annotations

from bisect import insort

import numpy as np

COMPILED = False


def run_sweeps(codes, flags, counts, outliers, f_table, objective, epsilon, max_sweeps):
    """Run improvement sweeps until none of the candidate swaps helps.

    Scans non-outlier records in index order; for each, evaluates the swap
    against every current outlier (ascending index) and accepts the best one
    when its delta is below -epsilon. ``flags``, ``counts`` and ``outliers``
    are updated in place to the final state. ``max_sweeps`` of 0 means
    unlimited.

    Returns (objective, sweeps, swaps, trace, capped) where ``trace`` holds
    the objective after each accepted swap and ``capped`` tells whether the
    sweep limit stopped a still-moving search.
    """
    n, m = codes.shape
    rows = codes.tolist()
    count_rows = counts.tolist()
    flag_list = flags.tolist()
    current = sorted(int(i) for i in outliers)
    f = f_table.tolist()
    objective = float(objective)

    inf = float("inf")
    sweeps = 0
    swaps = 0
    capped = False
    trace: list[float] = []

    while True:
        moved = False
        for t in range(n):
            if flag_list[t]:
                continue
            row_t = rows[t]
            best = inf
            best_o = -1
            for o in current:
                row_o = rows[o]
                d = 0.0
                for a, b, cr in zip(row_t, row_o, count_rows):
                    if a != b:
                        ca = cr[a]
                        cb = cr[b]
                        d += f[ca - 1] - f[ca] + f[cb + 1] - f[cb]
                if d < best:
                    best = d
                    best_o = o
            if best_o >= 0 and best < -epsilon:
                row_b = rows[best_o]
                for a, b, cr in zip(row_t, row_b, count_rows):
                    cr[a] -= 1
                    cr[b] += 1
                flag_list[t] = 1
                flag_list[best_o] = 0
                current.remove(best_o)
                insort(current, t)
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

    flags[:] = flag_list
    counts[:] = count_rows
    outliers[:] = np.array(current, dtype=np.int64)
    return objective, sweeps, swaps, trace, capped
