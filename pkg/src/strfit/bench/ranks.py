"""RMSE rank aggregation.

Models are ranked per dataset (ascending RMSE, ties get the average rank),
ranks are averaged across datasets, and the mean is divided by the pool
size so normalized ranks live in (0, 1] with lower better. Failed cells
(NaN / inf) receive the worst possible rank, the pool size, keeping the
pool constant across datasets.
"""

from __future__ import annotations

import numpy as np


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ascending ranks starting at 1 with ties averaged."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    sorted_vals = values[order]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def rank_matrix(rmse: np.ndarray) -> np.ndarray:
    """Per-dataset ranks (models x datasets); failed cells rank worst."""
    rmse = np.asarray(rmse, dtype=float)
    n_models, n_datasets = rmse.shape
    out = np.empty_like(rmse)
    for d in range(n_datasets):
        col = rmse[:, d]
        ok = np.isfinite(col)
        out[~ok, d] = n_models
        if ok.any():
            out[ok, d] = _average_ranks(col[ok])
    return out


def aggregate_ranks(rmse: np.ndarray) -> np.ndarray:
    """Normalized mean rank per model."""
    rmse = np.asarray(rmse, dtype=float)
    if rmse.ndim != 2 or rmse.shape[0] < 1 or rmse.shape[1] < 1:
        raise ValueError("need a (models x datasets) RMSE matrix")
    ranks = rank_matrix(rmse)
    return ranks.mean(axis=1) / rmse.shape[0]
