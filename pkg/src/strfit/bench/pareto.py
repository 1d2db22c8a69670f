"""Pareto frontier in the (prediction rank, interpretability) plane.

Lower rank is better, higher interpretability is better. A point is
dominated when some other point is at least as good on both axes and
strictly better on one.
"""

from __future__ import annotations

import numpy as np


def pareto_frontier(points) -> np.ndarray:
    """Boolean frontier flags, order-stable under input permutation.

    Sort-and-sweep: walking rank groups in ascending order, a point is
    dominated iff an earlier group reached at least its interpretability,
    or its own group strictly exceeds it.
    """
    pts = [(float(r), float(v)) for r, v in points]
    n = len(pts)
    flags = np.ones(n, dtype=bool)
    if n == 0:
        return flags
    order = sorted(range(n), key=lambda i: (pts[i][0], -pts[i][1]))
    best_before = -np.inf  # best interpretability among strictly lower ranks
    i = 0
    while i < n:
        j = i
        rank = pts[order[i]][0]
        while j + 1 < n and pts[order[j + 1]][0] == rank:
            j += 1
        group = [order[k] for k in range(i, j + 1)]
        group_best = max(pts[k][1] for k in group)
        for k in group:
            interp = pts[k][1]
            if best_before >= interp or group_best > interp:
                flags[k] = False
        best_before = max(best_before, group_best)
        i = j + 1
    return flags
