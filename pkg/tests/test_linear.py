import numpy as np
import pytest

from oracles import lasso_grid_oracle as grid_oracle
from oracles import lasso_objective
from strfit.errors import ConvergenceError
from strfit.linear import (
    LinearModel,
    fit_lasso_cd,
    fit_lasso_cv,
    fit_ols,
    fit_ridge_cv,
    lasso_alpha_max,
)
from strfit.rng import Rng


def standardized(X):
    return (X - X.mean(axis=0)) / X.std(axis=0)


def test_ols_exact_line():
    x = np.linspace(-2, 2, 10).reshape(-1, 1)
    model = fit_ols(x, 2 * x[:, 0])
    assert abs(model.intercept) < 1e-9
    assert abs(model.coefficients[0] - 2) < 1e-9


def test_ols_recovers_planted_coefficients():
    gen = np.random.default_rng(0)
    X = gen.normal(size=(200, 3))
    y = 3 * X[:, 0] + 2 * X[:, 1] + gen.normal(scale=0.1, size=200)
    model = fit_ols(X, y)
    np.testing.assert_allclose(model.coefficients, [3, 2, 0], atol=0.1)


def test_ols_duplicated_column_minimum_norm():
    gen = np.random.default_rng(1)
    x = gen.normal(size=60)
    X = np.column_stack([x, x])
    y = 2 * x + 1
    model = fit_ols(X, y)
    # oracle: pseudo-inverse of the centered design
    Xc = X - X.mean(axis=0)
    expected = np.linalg.pinv(Xc) @ (y - y.mean())
    np.testing.assert_allclose(model.coefficients, expected, atol=1e-8)
    np.testing.assert_allclose(model.coefficients, [1, 1], atol=1e-8)


def test_ols_residual_orthogonality_random():
    gen = np.random.default_rng(2)
    for _ in range(20):
        n = int(gen.integers(5, 40))
        p = int(gen.integers(1, 5))
        X = gen.normal(size=(n, p))
        y = gen.normal(size=n)
        model = fit_ols(X, y)
        r = y - model.predict(X)
        assert np.max(np.abs(X.T @ r)) <= 1e-6 * n


def test_ridge_tiny_alpha_matches_ols():
    gen = np.random.default_rng(3)
    X = gen.normal(size=(50, 3))
    y = X @ np.array([1.0, -2.0, 0.5]) + gen.normal(scale=0.05, size=50)
    ridge = fit_ridge_cv(X, y, grid=[1e-6], folds=5, rng=Rng(0))
    ols = fit_ols(X, y)
    np.testing.assert_allclose(ridge.coefficients, ols.coefficients, atol=1e-4)


def test_ridge_huge_alpha_shrinks_to_mean():
    gen = np.random.default_rng(4)
    X = gen.normal(size=(40, 2))
    y = X[:, 0] * 3 + 1
    model = fit_ridge_cv(X, y, grid=[1e9], folds=4, rng=Rng(0))
    np.testing.assert_allclose(model.coefficients, [0, 0], atol=1e-6)
    assert abs(model.intercept - y.mean()) < 1e-4


def test_ridge_two_by_two_hand_computed():
    X = np.eye(2)
    y = np.array([1.0, 0.0])
    model = fit_ridge_cv(X, y, grid=[1.0], folds=2, rng=Rng(0))
    # hand solve (X'X + I) beta = X'(y - ybar)
    expected = np.linalg.solve(X.T @ X + np.eye(2), X.T @ (y - y.mean()))
    np.testing.assert_allclose(model.coefficients, expected, atol=1e-12)
    np.testing.assert_allclose(model.coefficients, [0.25, -0.25], atol=1e-12)


def test_ridge_norm_monotone_in_alpha():
    gen = np.random.default_rng(5)
    X = gen.normal(size=(60, 4))
    y = X @ np.array([2.0, -1.0, 0.5, 3.0]) + gen.normal(scale=0.2, size=60)
    norms = [
        np.linalg.norm(fit_ridge_cv(X, y, grid=[a], folds=5, rng=Rng(1)).coefficients)
        for a in [0.01, 0.1, 1.0, 10.0, 100.0]
    ]
    assert all(norms[i + 1] <= norms[i] + 1e-12 for i in range(4))


def test_ridge_preconditions():
    X = np.eye(3)
    y = np.zeros(3)
    with pytest.raises(ValueError):
        fit_ridge_cv(X, y, grid=[], folds=2, rng=Rng(0))
    with pytest.raises(ValueError):
        fit_ridge_cv(X, y, grid=[1.0], folds=1, rng=Rng(0))
    with pytest.raises(ValueError):
        fit_ridge_cv(X, y, grid=[1.0], folds=5, rng=Rng(0))


def test_lasso_alpha_zero_matches_ols():
    gen = np.random.default_rng(6)
    X = gen.normal(size=(50, 3))
    y = X @ np.array([1.5, 0.0, -2.0]) + gen.normal(scale=0.1, size=50)
    lasso = fit_lasso_cd(X, y, alpha=0.0)
    ols = fit_ols(X, y)
    np.testing.assert_allclose(lasso.coefficients, ols.coefficients, atol=1e-5)
    np.testing.assert_allclose(lasso.intercept, ols.intercept, atol=1e-5)


def test_lasso_kill_point():
    gen = np.random.default_rng(7)
    X = standardized(gen.normal(size=(80, 4)))
    y = X @ np.array([2.0, -1.0, 0.0, 0.5]) + gen.normal(scale=0.1, size=80)
    amax = lasso_alpha_max(X, y)
    np.testing.assert_allclose(amax, np.max(np.abs(X.T @ (y - y.mean()))) / len(y))
    at = fit_lasso_cd(X, y, alpha=amax)
    assert np.all(at.coefficients == 0.0)
    below = fit_lasso_cd(X, y, alpha=amax * 0.98)
    assert np.any(below.coefficients != 0.0)


def test_lasso_kkt_on_random_instances():
    gen = np.random.default_rng(8)
    tol = 1e-6
    for _ in range(100):
        n = int(gen.integers(10, 30))
        p = int(gen.integers(1, 5))
        X = gen.normal(size=(n, p))
        y = gen.normal(size=n)
        alpha = float(gen.uniform(0.01, 0.5))
        model = fit_lasso_cd(X, y, alpha=alpha, tol=tol)
        Xs = standardized(X)
        b = model.coefficients * X.std(axis=0)  # back to the internal scale
        r = (y - y.mean()) - Xs @ b
        corr = Xs.T @ r / n
        for j in range(p):
            if b[j] == 0:
                assert abs(corr[j]) <= alpha + 10 * tol
            else:
                assert abs(corr[j] - alpha * np.sign(b[j])) <= 10 * tol


def test_lasso_objective_close_to_grid_oracle():
    gen = np.random.default_rng(9)
    for _ in range(5):
        n, p = 20, 3
        X = gen.normal(size=(n, p))
        y = gen.normal(size=n) + X[:, 0]
        alpha = float(gen.uniform(0.02, 0.3))
        model = fit_lasso_cd(X, y, alpha=alpha)
        Xs = standardized(X)
        yc = y - y.mean()
        b = model.coefficients * X.std(axis=0)
        assert lasso_objective(Xs, yc, b, alpha) <= grid_oracle(Xs, yc, alpha) + 1e-3


def test_lasso_nonconvergence_carries_iterate():
    gen = np.random.default_rng(10)
    X = gen.normal(size=(40, 3))
    y = X @ np.array([3.0, -1.0, 2.0]) + gen.normal(size=40)
    with pytest.raises(ConvergenceError) as err:
        fit_lasso_cd(X, y, alpha=0.01, tol=1e-15, max_iter=1)
    assert err.value.last_iterate is not None


def test_lasso_cv_pure_noise_nearly_empty():
    # CV-argmin sparsity on pure noise is a statistical property, so the
    # instance shape and seed range are pinned after empirical verification.
    for seed in range(10):
        gen = np.random.default_rng(1000 + seed)
        X = gen.normal(size=(100, 5))
        y = gen.normal(size=100)
        model, _ = fit_lasso_cv(X, y, n_alphas=50, folds=5, rng=Rng(seed))
        assert np.count_nonzero(model.coefficients) <= 1


def test_lasso_cv_recovers_sparse_support():
    gen = np.random.default_rng(15)
    X = gen.normal(size=(120, 6))
    y = 3 * X[:, 0] + gen.normal(scale=0.1, size=120)
    model, path = fit_lasso_cv(X, y, n_alphas=60, folds=5, rng=Rng(2))
    assert model.coefficients[0] != 0
    assert np.all(model.coefficients[1:] == 0.0)
    assert path.alphas[0] > path.alphas[-1]
    assert path.coefficients.shape == (60, 6)


def test_lasso_cv_path_end_matches_slope():
    gen = np.random.default_rng(12)
    x = gen.normal(size=(80, 1))
    y = 1.7 * x[:, 0]
    _, path = fit_lasso_cv(x, y, n_alphas=50, folds=5, rng=Rng(3))
    assert abs(path.coefficients[-1, 0] - 1.7) < 1e-2


def test_linear_model_validation():
    with pytest.raises(ValueError):
        LinearModel(intercept=0.0, coefficients=np.zeros(2), alpha=-1.0)
    model = LinearModel(intercept=1.0, coefficients=np.array([2.0]))
    with pytest.raises(ValueError):
        model.predict(np.zeros((3, 2)))


def test_deterministic_under_fixed_seed():
    gen = np.random.default_rng(13)
    X = gen.normal(size=(50, 3))
    y = X[:, 0] - X[:, 2] + gen.normal(scale=0.3, size=50)
    a, _ = fit_lasso_cv(X, y, n_alphas=30, folds=5, rng=Rng(7))
    b, _ = fit_lasso_cv(X, y, n_alphas=30, folds=5, rng=Rng(7))
    assert np.array_equal(a.coefficients, b.coefficients)
    assert a.alpha == b.alpha
    r1 = fit_ridge_cv(X, y, rng=Rng(7))
    r2 = fit_ridge_cv(X, y, rng=Rng(7))
    assert np.array_equal(r1.coefficients, r2.coefficients)
