"""Independent reference implementations used to check the library.

These deliberately avoid the library's own code paths: the lasso oracle is
a multi-scale grid search, the stump oracle a literal double loop, and the
frontier oracle an O(n^2) dominance scan.
"""

import numpy as np


def lasso_objective(Xs, yc, b, alpha):
    n = len(yc)
    return float(np.sum((yc - Xs @ b) ** 2) / (2 * n) + alpha * np.sum(np.abs(b)))


def lasso_grid_oracle(Xs, yc, alpha, half_width=4.0, points=13, zooms=6):
    """Multi-scale grid search over coefficient space."""
    p = Xs.shape[1]
    center = np.zeros(p)
    width = half_width
    best = None
    for _ in range(zooms):
        axes = [np.linspace(center[j] - width, center[j] + width, points) for j in range(p)]
        mesh = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
        vals = np.sum((yc[None, :] - mesh @ Xs.T) ** 2, axis=1) / (2 * len(yc)) + alpha * np.sum(
            np.abs(mesh), axis=1
        )
        i = int(np.argmin(vals))
        center, best = mesh[i], float(vals[i])
        width = width * 2.0 / (points - 1)
    return best


def exhaustive_stump(X, r):
    """Literal search over every feature and every midpoint between
    adjacent distinct sorted values."""
    best = None
    n, p = X.shape
    parent = np.sum((r - r.mean()) ** 2)
    for j in range(p):
        xs = np.sort(np.unique(X[:, j]))
        for a, b in zip(xs[:-1], xs[1:]):
            t = (a + b) / 2
            left, right = r[X[:, j] <= t], r[X[:, j] > t]
            sse = np.sum((left - left.mean()) ** 2) + np.sum((right - right.mean()) ** 2)
            red = parent - sse
            if best is None or red > best[0] + 1e-12:
                best = (red, j, t, left.mean(), right.mean())
    return best


def brute_force_frontier(points):
    """O(n^2) dominance: lower rank better, higher interpretability better."""
    n = len(points)
    flags = np.ones(n, dtype=bool)
    for i in range(n):
        ri, vi = points[i]
        for j in range(n):
            if i == j:
                continue
            rj, vj = points[j]
            if rj <= ri and vj >= vi and (rj < ri or vj > vi):
                flags[i] = False
                break
    return flags
