"""Linear fitting primitives: OLS, ridge with CV, and coordinate-descent lasso.

Conventions
-----------
* OLS and ridge center the columns and the target; ridge penalizes the
  centered coefficients directly, i.e. solves (Xc'Xc + alpha*I) b = Xc'yc.
* The lasso standardizes columns internally (center, unit population
  variance) and minimizes ||yc - Xs b||^2 / (2n) + alpha * ||b||_1; the
  stationarity conditions are therefore stated on the standardized columns.
  Reported coefficients are always back-transformed to the original scale.
* Cross-validation uses seeded shuffled fold assignment; ties in CV error
  break toward the larger (more regularized) alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError
from .rng import Rng

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 10_000
# Inside the CV path, per-alpha solves run at a looser tolerance with a low
# sweep cap, carrying the last iterate forward on non-convergence (hinge
# bases are exactly collinear, which stalls coordinate descent at the
# smallest alphas); the model returned at the chosen alpha is re-polished at
# the strict tolerance.
PATH_TOL = 1e-4
PATH_MAX_ITER = 150
RIDGE_GRID = tuple(np.geomspace(1e-5, 1e3, 100))


@dataclass
class LinearModel:
    intercept: float
    coefficients: np.ndarray
    alpha: float | None = None
    cv_score: float | None = None

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        if self.alpha is not None and self.alpha < 0:
            raise ValueError("alpha must be nonnegative")

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.shape[1] != len(self.coefficients):
            raise ValueError(f"expected {len(self.coefficients)} columns, got {X.shape[1]}")
        return self.intercept + X @ self.coefficients


@dataclass
class RegPath:
    """Warm-started regularization path with per-alpha CV error."""

    alphas: np.ndarray
    coefficients: np.ndarray  # (n_alphas, p), original scale
    cv_errors: np.ndarray

    def __post_init__(self):
        if np.any(self.alphas <= 0) or np.any(np.diff(self.alphas) >= 0):
            raise ValueError("alphas must be positive and strictly descending")


def _as_xy(X, y):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != len(y):
        raise ValueError("X must be (n, p) and y length n")
    return X, y


def fit_ols(X, y) -> LinearModel:
    """Least squares with a free intercept; rank deficiency yields the
    minimum-norm coefficient vector."""
    X, y = _as_xy(X, y)
    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    beta, *_ = np.linalg.lstsq(X - x_mean, y - y_mean, rcond=None)
    return LinearModel(intercept=float(y_mean - x_mean @ beta), coefficients=beta)


def _ridge_solve(Xc, yc, alpha: float) -> np.ndarray:
    p = Xc.shape[1]
    return np.linalg.solve(Xc.T @ Xc + alpha * np.eye(p), Xc.T @ yc)


def _fold_ids(n: int, folds: int, rng: Rng) -> np.ndarray:
    perm = rng.generator.permutation(n)
    ids = np.empty(n, dtype=int)
    ids[perm] = np.arange(n) % folds
    return ids


def _pick_alpha(alphas, errors) -> int:
    """Index of the smallest CV error; exact ties go to the larger alpha."""
    best = np.min(errors)
    tied = np.flatnonzero(errors == best)
    return int(tied[np.argmax(np.asarray(alphas)[tied])])


def fit_ridge_cv(X, y, grid=RIDGE_GRID, folds: int = 5, rng: Rng | None = None) -> LinearModel:
    X, y = _as_xy(X, y)
    grid = np.asarray(grid, dtype=float)
    if len(grid) == 0 or np.any(grid <= 0):
        raise ValueError("alpha grid must be non-empty and positive")
    if folds < 2:
        raise ValueError("folds must be >= 2")
    n = len(y)
    if n < folds:
        raise ValueError(f"need at least {folds} rows for {folds}-fold CV, got {n}")
    rng = rng or Rng(0)

    ids = _fold_ids(n, folds, rng.child("ridge-cv-folds"))
    errors = np.zeros(len(grid))
    for k in range(folds):
        tr, va = ids != k, ids == k
        x_mean = X[tr].mean(axis=0)
        y_mean = y[tr].mean()
        Xc, yc = X[tr] - x_mean, y[tr] - y_mean
        Xv = X[va] - x_mean
        gram = Xc.T @ Xc
        xty = Xc.T @ yc
        for i, alpha in enumerate(grid):
            beta = np.linalg.solve(gram + alpha * np.eye(X.shape[1]), xty)
            resid = y[va] - (y_mean + Xv @ beta)
            errors[i] += np.mean(resid**2)
    errors /= folds

    best = _pick_alpha(grid, errors)
    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    beta = _ridge_solve(X - x_mean, y - y_mean, float(grid[best]))
    return LinearModel(
        intercept=float(y_mean - x_mean @ beta),
        coefficients=beta,
        alpha=float(grid[best]),
        cv_score=float(errors[best]),
    )


@dataclass
class _Standardized:
    Xs: np.ndarray
    x_mean: np.ndarray
    x_sd: np.ndarray
    live: np.ndarray  # columns with nonzero variance

    def back_transform(self, b: np.ndarray, y_mean: float, p: int):
        coef = np.zeros(p)
        coef[self.live] = b / self.x_sd[self.live]
        intercept = y_mean - self.x_mean @ coef
        return float(intercept), coef


def _standardize(X) -> _Standardized:
    x_mean = X.mean(axis=0)
    x_sd = X.std(axis=0)
    live = x_sd > 0
    Xs = (X[:, live] - x_mean[live]) / x_sd[live]
    return _Standardized(Xs, x_mean, x_sd, live)


def _cd_core(G, c, alpha, tol, max_iter, b0=None):
    """Cyclic coordinate descent on the gram system.

    G = Xs'Xs/n, c = Xs'yc/n. Maintains rho = c - G b (the per-column
    residual correlations), refreshing it periodically to cancel drift.
    Full sweeps alternate with sweeps over the active set; convergence is a
    full sweep whose largest coordinate update is at most tol.
    """
    p = len(c)
    b = np.zeros(p) if b0 is None else b0.copy()
    rho = c - G @ b
    diag = np.diag(G).copy()
    diag[diag == 0] = 1.0  # dead columns never move off zero

    def sweep(coords) -> float:
        nonlocal rho
        biggest = 0.0
        for j in coords:
            z = rho[j] + diag[j] * b[j]
            new = np.sign(z) * max(abs(z) - alpha, 0.0) / diag[j]
            delta = new - b[j]
            if delta != 0.0:
                rho -= G[:, j] * delta
                b[j] = new
                biggest = max(biggest, abs(delta))
        return biggest

    everything = range(p)
    it = 0
    while it < max_iter:
        moved = sweep(everything)
        it += 1
        if it % 50 == 0:
            rho[:] = c - G @ b
        if moved <= tol:
            return b, it
        while it < max_iter:
            active = np.flatnonzero(b)
            if len(active) == 0:
                break
            moved = sweep(active)
            it += 1
            if it % 50 == 0:
                rho[:] = c - G @ b
            if moved <= tol:
                break
    if it < max_iter or sweep(everything) <= tol:
        return b, it
    raise ConvergenceError(f"coordinate descent did not converge in {max_iter} sweeps", last_iterate=b)


def fit_lasso_cd(X, y, alpha: float, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> LinearModel:
    """Lasso at a fixed alpha on internally standardized columns.

    At the solution, inactive standardized columns satisfy |Xs_j'r|/n <=
    alpha + tol and active ones Xs_j'r/n = alpha*sign(b_j) +- tol.
    """
    X, y = _as_xy(X, y)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    n = len(y)
    std = _standardize(X)
    y_mean = y.mean()
    yc = y - y_mean
    G = std.Xs.T @ std.Xs / n
    c = std.Xs.T @ yc / n
    b, _ = _cd_core(G, c, alpha, tol, max_iter)
    intercept, coef = std.back_transform(b, y_mean, X.shape[1])
    return LinearModel(intercept=intercept, coefficients=coef, alpha=float(alpha))


def lasso_alpha_max(X, y) -> float:
    """Smallest alpha that zeroes every coefficient (standardized scale)."""
    X, y = _as_xy(X, y)
    std = _standardize(X)
    if std.Xs.shape[1] == 0:
        return 1.0
    return float(np.max(np.abs(std.Xs.T @ (y - y.mean()))) / len(y))


def _path_alphas(alpha_max: float, n_alphas: int) -> np.ndarray:
    return np.geomspace(alpha_max, alpha_max * 1e-4, n_alphas)


def _cd_best_effort(G, c, alpha, tol, max_iter, b0):
    try:
        b, _ = _cd_core(G, c, alpha, tol, max_iter, b0=b0)
    except ConvergenceError as err:
        b = err.last_iterate
    return b


def fit_lasso_cv(
    X,
    y,
    n_alphas: int = 100,
    folds: int = 5,
    rng: Rng | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[LinearModel, RegPath]:
    """Warm-started lasso path over a geometric alpha grid spanning four
    decades below alpha_max, with k-fold CV selection."""
    X, y = _as_xy(X, y)
    if folds < 2:
        raise ValueError("folds must be >= 2")
    n, p = X.shape
    if n < folds:
        raise ValueError(f"need at least {folds} rows for {folds}-fold CV, got {n}")
    rng = rng or Rng(0)

    alpha_max = lasso_alpha_max(X, y)
    if alpha_max <= 0:  # target already centered at zero signal
        alpha_max = 1e-8
    alphas = _path_alphas(alpha_max, n_alphas)

    ids = _fold_ids(n, folds, rng.child("lasso-cv-folds"))
    cv_errors = np.zeros(n_alphas)
    for k in range(folds):
        tr, va = ids != k, ids == k
        std = _standardize(X[tr])
        y_mean = y[tr].mean()
        yc = y[tr] - y_mean
        n_tr = int(tr.sum())
        G = std.Xs.T @ std.Xs / n_tr
        c = std.Xs.T @ yc / n_tr
        b = np.zeros(std.Xs.shape[1])
        for i, alpha in enumerate(alphas):
            b = _cd_best_effort(G, c, float(alpha), PATH_TOL, PATH_MAX_ITER, b)
            intercept, coef = std.back_transform(b, y_mean, p)
            resid = y[va] - (intercept + X[va] @ coef)
            cv_errors[i] += np.mean(resid**2)
    cv_errors /= folds

    # Full-data path for reporting, reusing the same grid.
    std = _standardize(X)
    y_mean = y.mean()
    yc = y - y_mean
    G = std.Xs.T @ std.Xs / n
    c = std.Xs.T @ yc / n
    coef_path = np.zeros((n_alphas, p))
    intercepts = np.zeros(n_alphas)
    path_b = []
    b = np.zeros(std.Xs.shape[1])
    for i, alpha in enumerate(alphas):
        b = _cd_best_effort(G, c, float(alpha), PATH_TOL, PATH_MAX_ITER, b)
        path_b.append(b.copy())
        intercepts[i], coef_path[i] = std.back_transform(b, y_mean, p)

    best = _pick_alpha(alphas, cv_errors)
    # the selected point is re-solved at the strict tolerance
    b = _cd_best_effort(G, c, float(alphas[best]), tol, max_iter, path_b[best])
    intercepts[best], coef_path[best] = std.back_transform(b, y_mean, p)
    model = LinearModel(
        intercept=float(intercepts[best]),
        coefficients=coef_path[best].copy(),
        alpha=float(alphas[best]),
        cv_score=float(cv_errors[best]),
    )
    return model, RegPath(alphas=alphas, coefficients=coef_path, cv_errors=cv_errors)
